//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_UTIL_IO_HPP_
#define AISENS_UTIL_IO_HPP_

#include <string>
#include <string_view>

namespace aisens::util {

/// Reads a whole file. Throws IoError.
std::string read_file(const std::string &path);

/// Writes through a temporary sibling and renames it into place, so readers
/// never observe a partial file. Throws IoError.
void write_file_atomic(const std::string &path, std::string_view contents);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace aisens::util

#endif  // AISENS_UTIL_IO_HPP_
