//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_DATA_DATASET_HPP_
#define AISENS_DATA_DATASET_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aisens/vocab/vocabulary.hpp"

namespace aisens::data {

enum class Split : std::uint8_t { kTrain, kValid, kTest };
enum class Representation : std::uint8_t { kAis, kSmiles };

std::string_view to_string(Split s) noexcept;
std::string_view to_string(Representation r) noexcept;
/// Accepts "train", "valid", "test". Throws ConfigError.
Split parse_split(std::string_view s);
/// Accepts "ais", "smiles". Throws ConfigError.
Representation parse_representation(std::string_view s);

struct Record {
  std::string smiles;
  /// Keyed by canonical property name: "qed", "logp", "molwt".
  std::map<std::string, double> targets;
  TokenSeq tokens_ais;
  TokenSeq tokens_smiles;
  Split split = Split::kTrain;

  const TokenSeq &tokens(Representation r) const {
    return r == Representation::kAis ? tokens_ais : tokens_smiles;
  }
};

/// Which CSV header names hold the SMILES and each property.
struct ColumnMap {
  std::string smiles = "smiles";
  /// Canonical property name -> CSV header.
  std::map<std::string, std::string> properties;

  /// smiles, qed, logP, MolWt.
  static ColumnMap zinc();
};

struct Reject {
  /// 1-based data row; the header is row 0.
  std::size_t row_number = 0;
  std::string reason;
};

struct LoadResult {
  std::vector<Record> records;
  std::vector<Reject> rejects;
  /// Records whose SMILES already occurred earlier in the file.
  std::size_t duplicates = 0;
};

/// Parses and tokenizes every row. Rows with bad SMILES, bad numbers or
/// out-of-range targets (qed outside [0,1], molwt <= 0) become rejects.
/// Throws MissingColumn, IoError, FormatError.
LoadResult load_csv(const std::string &path, const ColumnMap &columns,
                    int threads = 1);
LoadResult load_csv_text(std::string_view text, const ColumnMap &columns,
                         int threads = 1);

/// Fills tokens_ais and tokens_smiles. Throws SmilesError.
void tokenize_record(Record &r);

std::string rejects_csv(std::span<const Reject> rejects);

struct SplitSpec {
  double train = 0.8;
  double valid = 0.1;
  double test = 0.1;
  std::uint64_t seed = 42;

  /// Throws ConfigError unless each fraction is in (0,1) and they sum to 1.
  void validate() const;
};

/// Shuffles indices with `seed` and cuts them at round(n*train) and
/// round(n*(train+valid)).
void assign_splits(std::span<Record> records, const SplitSpec &spec);

std::size_t count_split(std::span<const Record> records, Split s);

/// Per-property z-score statistics from Train rows.
class TargetScaler {
public:
  struct Stats {
    double mean = 0;
    double stddev = 1;
    bool enabled = false;

    bool operator==(const Stats &) const = default;
  };

  TargetScaler() = default;

  /// Fits `enabled_properties` on Train records; other properties pass
  /// through unchanged. Throws EmptyInput when Train lacks a property.
  static TargetScaler fit(std::span<const Record> records,
                          std::span<const std::string> enabled_properties);

  double transform(const std::string &property, double y) const;
  double inverse(const std::string &property, double z) const;
  Stats stats(const std::string &property) const;
  const std::map<std::string, Stats> &all() const { return stats_; }
  void set(const std::string &property, Stats s) { stats_[property] = s; }

  bool operator==(const TargetScaler &) const = default;

private:
  std::map<std::string, Stats> stats_;
};

/// Default normalization: molwt only.
std::vector<std::string> default_scaled_properties();

/// One split, encoded for one representation and one target property.
struct EncodedSet {
  int max_len = 0;
  /// Row-major size() x max_len.
  std::vector<int> ids;
  std::vector<int> lengths;
  /// Scaled targets.
  std::vector<double> targets;
  /// Index of each row in the source record list.
  std::vector<std::size_t> record_index;

  std::size_t size() const noexcept { return lengths.size(); }
};

/// Throws MissingColumn when a selected record lacks `property`.
EncodedSet encode_split(std::span<const Record> records, Split split,
                        const Vocabulary &vocab, Representation rep,
                        const std::string &property, const TargetScaler &scaler,
                        int max_len);

struct Batch {
  int max_len = 0;
  std::vector<int> ids;
  std::vector<int> lengths;
  std::vector<double> targets;
  /// Rows of the EncodedSet in this batch.
  std::vector<std::size_t> rows;

  int size() const noexcept { return static_cast<int>(lengths.size()); }
};

/// Consecutive batches of `batch_size`, the last one possibly shorter.
/// With a shuffle seed the row order is a seeded permutation; without one
/// it is the set's order.
std::vector<Batch> make_batches(const EncodedSet &set, int batch_size,
                                std::optional<std::uint64_t> shuffle_seed);

/// Batches for one epoch: Train reshuffles with a seed derived from
/// (seed, epoch); Valid and Test keep their order.
std::vector<Batch> epoch_batches(const EncodedSet &set, Split split,
                                 int batch_size, std::uint64_t seed, int epoch);

/// JSONL line: {"smiles", "tokens", "targets", "split", "representation"}.
std::string to_jsonl_line(const Record &r, Representation rep);
/// Reads records written by to_jsonl_line; the tokens land in the field for
/// the recorded representation. Throws FormatError.
std::vector<Record> read_jsonl(std::string_view text,
                               Representation *rep_out = nullptr);

}  // namespace aisens::data

#endif  // AISENS_DATA_DATASET_HPP_
