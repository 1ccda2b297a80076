//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/data/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "aisens/ais/tokenizer.hpp"
#include "aisens/chem/molecule.hpp"
#include "aisens/data/csv.hpp"
#include "aisens/error.hpp"
#include "aisens/util/io.hpp"
#include "aisens/util/random.hpp"

namespace aisens::data {

using nlohmann::json;

std::string_view to_string(Split s) noexcept {
  switch (s) {
  case Split::kTrain: return "train";
  case Split::kValid: return "valid";
  case Split::kTest: return "test";
  }
  return "?";
}

std::string_view to_string(Representation r) noexcept {
  return r == Representation::kAis ? "ais" : "smiles";
}

Split parse_split(std::string_view s) {
  if (s == "train")
    return Split::kTrain;
  if (s == "valid")
    return Split::kValid;
  if (s == "test")
    return Split::kTest;
  throw ConfigError({ "unknown split '" + std::string(s) + "'" });
}

Representation parse_representation(std::string_view s) {
  if (s == "ais")
    return Representation::kAis;
  if (s == "smiles")
    return Representation::kSmiles;
  throw ConfigError({ "unknown representation '" + std::string(s) + "'" });
}

ColumnMap ColumnMap::zinc() {
  ColumnMap m;
  m.properties = { { "qed", "qed" }, { "logp", "logP" }, { "molwt", "MolWt" } };
  return m;
}

void tokenize_record(Record &r) {
  const chem::Molecule mol = chem::parse_smiles(r.smiles);
  r.tokens_ais = ais::molecule_to_ais(mol).rendered();
  r.tokens_smiles = ais::smiles_atom_tokenize(r.smiles);
}

namespace {

std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ')
    s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ')
    s.remove_suffix(1);
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()
      || !std::isfinite(v))
    return std::nullopt;
  return v;
}

struct RowOutcome {
  std::optional<Record> record;
  std::string reason;
};

RowOutcome process_row(const CsvRow &row, std::size_t ncols, int smiles_col,
                       const std::vector<std::pair<std::string, int>> &props) {
  RowOutcome out;
  if (row.size() != ncols) {
    out.reason = "FormatError: expected " + std::to_string(ncols)
               + " fields, got " + std::to_string(row.size());
    return out;
  }
  Record rec;
  rec.smiles = row[static_cast<std::size_t>(smiles_col)];
  for (const auto &[name, col]: props) {
    const std::string &cell = row[static_cast<std::size_t>(col)];
    const auto v = parse_number(cell);
    if (!v) {
      out.reason = "FormatError: " + name + " value '" + cell
                 + "' is not a finite number";
      return out;
    }
    if (name == "qed" && (*v < 0.0 || *v > 1.0)) {
      out.reason = "RangeViolation: qed=" + cell + " outside [0,1]";
      return out;
    }
    if (name == "molwt" && *v <= 0.0) {
      out.reason = "RangeViolation: molwt=" + cell + " not positive";
      return out;
    }
    rec.targets[name] = *v;
  }
  try {
    tokenize_record(rec);
  } catch (const SyntaxError &e) {
    out.reason = std::string("SyntaxError: ") + e.what();
    return out;
  } catch (const RingClosureError &e) {
    out.reason = std::string("RingClosureError: ") + e.what();
    return out;
  } catch (const ValenceError &e) {
    out.reason = std::string("ValenceError: ") + e.what();
    return out;
  }
  out.record = std::move(rec);
  return out;
}

}  // namespace

LoadResult load_csv_text(std::string_view text, const ColumnMap &columns,
                         int threads) {
  const std::vector<CsvRow> rows = parse_csv(text);
  if (rows.empty())
    throw FormatError("CSV has no header row");
  const CsvRow &header = rows[0];
  auto find_col = [&](const std::string &name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw MissingColumn("CSV header lacks column '" + name + "'");
    return static_cast<int>(it - header.begin());
  };
  const int smiles_col = find_col(columns.smiles);
  std::vector<std::pair<std::string, int>> props;
  for (const auto &[name, col]: columns.properties)
    props.emplace_back(name, find_col(col));

  // Blank lines carry no record and are skipped silently.
  std::vector<std::size_t> data_rows;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].size() == 1 && rows[i][0].empty()))
      data_rows.push_back(i);

  std::vector<RowOutcome> outcomes(data_rows.size());
  const std::size_t nthreads = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(threads, 1)), 1,
      std::max<std::size_t>(data_rows.size(), 1));
  auto work = [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k)
      outcomes[k] = process_row(rows[data_rows[k]], header.size(), smiles_col,
                                props);
  };
  if (nthreads == 1) {
    work(0, data_rows.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (data_rows.size() + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
      const std::size_t b = std::min(data_rows.size(), t * chunk);
      pool.emplace_back(work, b, std::min(data_rows.size(), b + chunk));
    }
  }

  LoadResult result;
  std::unordered_set<std::string> seen;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (!outcomes[k].record) {
      result.rejects.push_back({ data_rows[k], std::move(outcomes[k].reason) });
      continue;
    }
    if (!seen.insert(outcomes[k].record->smiles).second)
      ++result.duplicates;
    result.records.push_back(std::move(*outcomes[k].record));
  }
  return result;
}

LoadResult load_csv(const std::string &path, const ColumnMap &columns,
                    int threads) {
  return load_csv_text(util::read_file(path), columns, threads);
}

std::string rejects_csv(std::span<const Reject> rejects) {
  std::string out = "row_number,reason\n";
  for (const Reject &r: rejects)
    out += csv_line({ std::to_string(r.row_number), r.reason });
  return out;
}

void SplitSpec::validate() const {
  std::vector<std::string> problems;
  for (const auto &[name, f]: { std::pair{ "train", train },
                                std::pair{ "valid", valid },
                                std::pair{ "test", test } })
    if (!(f > 0.0 && f < 1.0))
      problems.push_back(std::string(name) + " fraction must lie in (0,1)");
  if (std::abs(train + valid + test - 1.0) > 1e-9)
    problems.emplace_back("split fractions must sum to 1");
  if (!problems.empty())
    throw ConfigError(std::move(problems));
}

void assign_splits(std::span<Record> records, const SplitSpec &spec) {
  spec.validate();
  const std::size_t n = records.size();
  util::Rng rng(spec.seed);
  const std::vector<std::size_t> perm = util::permutation(n, rng);
  const auto cut = [n](double f) {
    return std::min(n, static_cast<std::size_t>(
                           std::llround(static_cast<double>(n) * f)));
  };
  const std::size_t n_train = cut(spec.train);
  const std::size_t n_train_valid = std::max(n_train, cut(spec.train + spec.valid));
  for (std::size_t k = 0; k < n; ++k) {
    Split s = Split::kTest;
    if (k < n_train)
      s = Split::kTrain;
    else if (k < n_train_valid)
      s = Split::kValid;
    records[perm[k]].split = s;
  }
}

std::size_t count_split(std::span<const Record> records, Split s) {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(),
                    [s](const Record &r) { return r.split == s; }));
}

TargetScaler TargetScaler::fit(std::span<const Record> records,
                               std::span<const std::string> enabled_properties) {
  TargetScaler sc;
  for (const std::string &prop: enabled_properties) {
    double sum = 0;
    std::size_t n = 0;
    for (const Record &r: records) {
      if (r.split != Split::kTrain)
        continue;
      const auto it = r.targets.find(prop);
      if (it == r.targets.end())
        continue;
      sum += it->second;
      ++n;
    }
    if (n == 0)
      throw EmptyInput("no Train rows carry property '" + prop + "'");
    const double mean = sum / static_cast<double>(n);
    double ss = 0;
    for (const Record &r: records) {
      if (r.split != Split::kTrain)
        continue;
      const auto it = r.targets.find(prop);
      if (it != r.targets.end())
        ss += (it->second - mean) * (it->second - mean);
    }
    double sd = std::sqrt(ss / static_cast<double>(n));
    if (!(sd > 0.0))
      sd = 1.0;
    sc.stats_[prop] = { mean, sd, true };
  }
  return sc;
}

TargetScaler::Stats TargetScaler::stats(const std::string &property) const {
  const auto it = stats_.find(property);
  return it == stats_.end() ? Stats{} : it->second;
}

double TargetScaler::transform(const std::string &property, double y) const {
  const Stats s = stats(property);
  return s.enabled ? (y - s.mean) / s.stddev : y;
}

double TargetScaler::inverse(const std::string &property, double z) const {
  const Stats s = stats(property);
  return s.enabled ? z * s.stddev + s.mean : z;
}

std::vector<std::string> default_scaled_properties() { return { "molwt" }; }

EncodedSet encode_split(std::span<const Record> records, Split split,
                        const Vocabulary &vocab, Representation rep,
                        const std::string &property, const TargetScaler &scaler,
                        int max_len) {
  EncodedSet set;
  set.max_len = max_len;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Record &r = records[i];
    if (r.split != split)
      continue;
    const auto it = r.targets.find(property);
    if (it == r.targets.end())
      throw MissingColumn("record '" + r.smiles + "' lacks property '"
                          + property + "'");
    const EncodedSequence e = encode(vocab, r.tokens(rep), max_len);
    set.ids.insert(set.ids.end(), e.ids.begin(), e.ids.end());
    set.lengths.push_back(e.length);
    set.targets.push_back(scaler.transform(property, it->second));
    set.record_index.push_back(i);
  }
  return set;
}

std::vector<Batch> make_batches(const EncodedSet &set, int batch_size,
                                std::optional<std::uint64_t> shuffle_seed) {
  if (batch_size < 1)
    throw ConfigError({ "batch_size must be >= 1" });
  std::vector<std::size_t> order(set.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  if (shuffle_seed) {
    util::Rng rng(*shuffle_seed);
    util::shuffle(std::span<std::size_t>(order), rng);
  }
  std::vector<Batch> out;
  const auto L = static_cast<std::size_t>(set.max_len);
  for (std::size_t b = 0; b < order.size(); b += static_cast<std::size_t>(batch_size)) {
    Batch batch;
    batch.max_len = set.max_len;
    const std::size_t e = std::min(order.size(), b + static_cast<std::size_t>(batch_size));
    for (std::size_t k = b; k < e; ++k) {
      const std::size_t row = order[k];
      batch.ids.insert(batch.ids.end(), set.ids.begin() + static_cast<std::ptrdiff_t>(row * L),
                       set.ids.begin() + static_cast<std::ptrdiff_t>((row + 1) * L));
      batch.lengths.push_back(set.lengths[row]);
      batch.targets.push_back(set.targets[row]);
      batch.rows.push_back(row);
    }
    out.push_back(std::move(batch));
  }
  return out;
}

std::vector<Batch> epoch_batches(const EncodedSet &set, Split split,
                                 int batch_size, std::uint64_t seed, int epoch) {
  if (split == Split::kTrain)
    return make_batches(set, batch_size,
                        util::derive_seed(seed, static_cast<std::uint64_t>(epoch)));
  return make_batches(set, batch_size, std::nullopt);
}

std::string to_jsonl_line(const Record &r, Representation rep) {
  json j;
  j["smiles"] = r.smiles;
  j["tokens"] = r.tokens(rep);
  j["targets"] = r.targets;
  j["split"] = to_string(r.split);
  j["representation"] = to_string(rep);
  return j.dump() + "\n";
}

std::vector<Record> read_jsonl(std::string_view text, Representation *rep_out) {
  std::vector<Record> out;
  std::optional<Representation> rep;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos)
      continue;
    const std::string where = "JSONL line " + std::to_string(line_no) + ": ";
    try {
      const json j = json::parse(line);
      Record r;
      r.smiles = j.at("smiles").get<std::string>();
      const Representation lr = parse_representation(
          j.at("representation").get<std::string>());
      if (rep && *rep != lr)
        throw FormatError(where + "mixed representations in one file");
      rep = lr;
      auto toks = j.at("tokens").get<TokenSeq>();
      (lr == Representation::kAis ? r.tokens_ais : r.tokens_smiles) = std::move(toks);
      r.targets = j.at("targets").get<std::map<std::string, double>>();
      r.split = parse_split(j.at("split").get<std::string>());
      out.push_back(std::move(r));
    } catch (const json::exception &e) {
      throw FormatError(where + e.what());
    } catch (const ConfigError &e) {
      throw FormatError(where + e.what());
    }
  }
  if (rep_out && rep)
    *rep_out = *rep;
  return out;
}

}  // namespace aisens::data
