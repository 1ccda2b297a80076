//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_UTIL_HASH_HPP_
#define AISENS_UTIL_HASH_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace aisens::util {

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view data,
                                std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (const char c: data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v);

/// Hash of a file's bytes, as 16 hex digits. Throws IoError.
std::string file_hash(const std::string &path);

}  // namespace aisens::util

#endif  // AISENS_UTIL_HASH_HPP_
