//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/vocab/vocabulary.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <thread>
#include <unordered_map>

#include "aisens/error.hpp"
#include "aisens/util/hash.hpp"
#include "aisens/util/io.hpp"

namespace aisens {

Vocabulary::Vocabulary() {
  for (const auto s: kSpecials) {
    ids_.emplace(std::string(s), static_cast<int>(tokens_.size()));
    tokens_.emplace_back(s);
    freqs_.push_back(0);
  }
}

Vocabulary Vocabulary::from_entries(std::vector<std::string> tokens,
                                    std::vector<std::int64_t> freqs) {
  if (tokens.size() != freqs.size())
    throw FormatError("vocabulary token and frequency counts differ");
  if (tokens.size() < kNumSpecials)
    throw FormatError("vocabulary lacks the special tokens");
  Vocabulary v;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i < kNumSpecials) {
      if (tokens[i] != kSpecials[i])
        throw FormatError("expected special token '" + std::string(kSpecials[i])
                          + "' at id " + std::to_string(i));
      if (freqs[i] != 0)
        throw FormatError("special token with nonzero frequency");
      continue;
    }
    if (tokens[i].empty())
      throw FormatError("empty token at id " + std::to_string(i));
    if (freqs[i] < 1)
      throw FormatError("token '" + tokens[i] + "' has frequency < 1");
    if (!v.ids_.emplace(tokens[i], static_cast<int>(i)).second)
      throw FormatError("duplicate token '" + tokens[i] + "'");
    v.tokens_.push_back(std::move(tokens[i]));
    v.freqs_.push_back(freqs[i]);
  }
  return v;
}

int Vocabulary::id_of(std::string_view token) const {
  const auto it = ids_.find(token);
  return it == ids_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return ids_.find(token) != ids_.end();
}

const std::string &Vocabulary::token_of(int id) const {
  return tokens_.at(static_cast<std::size_t>(id));
}

std::int64_t Vocabulary::freq(int id) const {
  return freqs_.at(static_cast<std::size_t>(id));
}

std::int64_t Vocabulary::freq(std::string_view token) const {
  const auto it = ids_.find(token);
  return it == ids_.end() ? 0 : freqs_[static_cast<std::size_t>(it->second)];
}

std::string Vocabulary::to_tsv() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out += tokens_[i];
    out += '\t';
    out += std::to_string(i);
    out += '\t';
    out += std::to_string(freqs_[i]);
    out += '\n';
  }
  return out;
}

namespace {

template <class T>
T parse_int_field(std::string_view f, std::size_t line_no) {
  T v{};
  const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || res.ec != std::errc() || res.ptr != f.data() + f.size())
    throw FormatError("line " + std::to_string(line_no) + ": bad integer '"
                      + std::string(f) + "'");
  return v;
}

}  // namespace

Vocabulary Vocabulary::from_tsv(std::string_view text) {
  std::vector<std::string> tokens;
  std::vector<std::int64_t> freqs;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (line.empty())
      throw FormatError("line " + std::to_string(line_no) + ": empty line");
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 =
        t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos
        || line.find('\t', t2 + 1) != std::string_view::npos)
      throw FormatError("line " + std::to_string(line_no)
                        + ": expected 3 tab-separated fields");
    const int id = parse_int_field<int>(line.substr(t1 + 1, t2 - t1 - 1),
                                        line_no);
    if (id != static_cast<int>(tokens.size()))
      throw FormatError("line " + std::to_string(line_no) + ": id "
                        + std::to_string(id) + " out of sequence");
    tokens.emplace_back(line.substr(0, t1));
    freqs.push_back(parse_int_field<std::int64_t>(line.substr(t2 + 1),
                                                  line_no));
  }
  return from_entries(std::move(tokens), std::move(freqs));
}

std::string Vocabulary::hash() const {
  return util::hex64(util::fnv1a64(to_tsv()));
}

namespace {

using Counts = std::unordered_map<std::string, std::int64_t>;

void count_range(std::span<const TokenSeq> corpus, Counts &out) {
  for (const auto &seq: corpus)
    for (const auto &tok: seq)
      ++out[tok];
}

}  // namespace

Vocabulary build_vocab(std::span<const TokenSeq> corpus, int min_count,
                       int threads) {
  if (corpus.empty())
    throw EmptyCorpus("cannot build a vocabulary from zero sequences");
  if (min_count < 1)
    throw ConfigError({ "min_count must be >= 1" });

  const std::size_t nshards = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(threads, 1)), 1, corpus.size());
  std::vector<Counts> shards(nshards);
  if (nshards == 1) {
    count_range(corpus, shards[0]);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (corpus.size() + nshards - 1) / nshards;
    for (std::size_t s = 0; s < nshards; ++s) {
      const std::size_t b = std::min(corpus.size(), s * chunk);
      const std::size_t e = std::min(corpus.size(), b + chunk);
      workers.emplace_back([&, s, b, e] {
        count_range(corpus.subspan(b, e - b), shards[s]);
      });
    }
  }
  // Integer sums commute, so merge order cannot change the totals.
  Counts total = std::move(shards[0]);
  for (std::size_t s = 1; s < nshards; ++s)
    for (auto &[tok, n]: shards[s])
      total[tok] += n;

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto &[tok, n]: total) {
    if (n < min_count)
      continue;
    if (std::find(Vocabulary::kSpecials.begin(), Vocabulary::kSpecials.end(),
                  tok) != Vocabulary::kSpecials.end())
      continue;
    kept.emplace_back(tok, n);
  }
  std::sort(kept.begin(), kept.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second)
      return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<std::string> tokens(Vocabulary::kSpecials.begin(),
                                  Vocabulary::kSpecials.end());
  std::vector<std::int64_t> freqs(Vocabulary::kNumSpecials, 0);
  for (auto &[tok, n]: kept) {
    tokens.push_back(std::move(tok));
    freqs.push_back(n);
  }
  return Vocabulary::from_entries(std::move(tokens), std::move(freqs));
}

EncodedSequence encode(const Vocabulary &v, std::span<const std::string> tokens,
                       int max_len) {
  if (max_len < 2)
    throw ConfigError({ "max_len must be >= 2" });
  EncodedSequence out;
  out.ids.reserve(static_cast<std::size_t>(max_len));
  out.ids.push_back(Vocabulary::kBos);
  for (const auto &t: tokens) {
    if (static_cast<int>(out.ids.size()) == max_len)
      break;
    out.ids.push_back(v.id_of(t));
  }
  if (static_cast<int>(out.ids.size()) < max_len)
    out.ids.push_back(Vocabulary::kEos);
  out.length = static_cast<int>(out.ids.size());
  out.ids.resize(static_cast<std::size_t>(max_len), Vocabulary::kPad);
  return out;
}

TokenSeq decode(const Vocabulary &v, std::span<const int> ids) {
  TokenSeq out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int id = ids[i];
    if (i == 0 && id == Vocabulary::kBos)
      continue;
    if (id == Vocabulary::kEos || id == Vocabulary::kPad)
      break;
    out.push_back(v.token_of(id));
  }
  return out;
}

void save_vocab(const Vocabulary &v, const std::string &path) {
  util::write_file_atomic(path, v.to_tsv());
}

Vocabulary load_vocab(const std::string &path) {
  return Vocabulary::from_tsv(util::read_file(path));
}

}  // namespace aisens
