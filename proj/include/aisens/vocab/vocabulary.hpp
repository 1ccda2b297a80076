//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_VOCAB_VOCABULARY_HPP_
#define AISENS_VOCAB_VOCABULARY_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aisens {

using TokenSeq = std::vector<std::string>;

/// Token to id map with frequency counts. Ids 0-3 are the special tokens.
class Vocabulary {
public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;
  static constexpr int kNumSpecials = 4;
  static constexpr std::array<std::string_view, 4> kSpecials = {
    "<pad>", "<unk>", "<bos>", "<eos>"
  };

  /// Only the specials.
  Vocabulary();

  /// Appends in id order. Specials must already be present.
  static Vocabulary from_entries(std::vector<std::string> tokens,
                                 std::vector<std::int64_t> freqs);

  int size() const { return static_cast<int>(tokens_.size()); }
  int size_without_specials() const { return size() - kNumSpecials; }

  /// kUnk when absent.
  int id_of(std::string_view token) const;
  bool contains(std::string_view token) const;
  const std::string &token_of(int id) const;
  /// 0 for specials.
  std::int64_t freq(int id) const;
  std::int64_t freq(std::string_view token) const;

  const std::vector<std::string> &tokens() const { return tokens_; }
  static bool is_special(int id) { return id >= 0 && id < kNumSpecials; }

  /// TSV text, `token<TAB>id<TAB>freq` per line.
  std::string to_tsv() const;
  static Vocabulary from_tsv(std::string_view text);

  /// FNV-1a over to_tsv(), as hex.
  std::string hash() const;

  bool operator==(const Vocabulary &o) const {
    return tokens_ == o.tokens_ && freqs_ == o.freqs_;
  }

private:
  struct SvHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> tokens_;
  std::vector<std::int64_t> freqs_;
  std::unordered_map<std::string, int, SvHash, std::equal_to<>> ids_;
};

/// Counts tokens in `corpus` and keeps those with count >= min_count.
/// Ids follow descending frequency, ties lexicographic. `threads` > 1 counts
/// shards in parallel; the result does not depend on it. Throws EmptyCorpus
/// when `corpus` has no sequences.
Vocabulary build_vocab(std::span<const TokenSeq> corpus, int min_count = 1,
                       int threads = 1);

struct EncodedSequence {
  std::vector<int> ids;
  /// Number of non-PAD positions.
  int length = 0;
};

/// BOS, ids, EOS, truncated to max_len (>= 2) then padded with PAD.
EncodedSequence encode(const Vocabulary &v, std::span<const std::string> tokens,
                       int max_len);

/// Inverse of encode: drops BOS, stops at EOS or PAD.
TokenSeq decode(const Vocabulary &v, std::span<const int> ids);

void save_vocab(const Vocabulary &v, const std::string &path);
Vocabulary load_vocab(const std::string &path);

}  // namespace aisens

#endif  // AISENS_VOCAB_VOCABULARY_HPP_
