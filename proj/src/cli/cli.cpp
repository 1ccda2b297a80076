//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "aisens/cli/cli.hpp"
#include "aisens/data/csv.hpp"
#include "aisens/data/dataset.hpp"
#include "aisens/ensemble/ensemble.hpp"
#include "aisens/error.hpp"
#include "aisens/experiment/ablation.hpp"
#include "aisens/metrics/metrics.hpp"
#include "aisens/nn/artifact.hpp"
#include "aisens/nn/train.hpp"
#include "aisens/util/hash.hpp"
#include "aisens/util/io.hpp"

namespace aisens::cli {

using nlohmann::json;
namespace fs = std::filesystem;

json RunManifest::to_json() const {
  json j;
  j["command"] = command;
  j["args"] = args;
  j["config_hash"] = config_hash;
  j["inputs"] = inputs;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["threads"] = threads;
  j["tool_version"] = tool_version;
  j["wall_time_seconds"] = wall_time_seconds;
  j["outputs"] = outputs;
  j["extra"] = extra;
  return j;
}

namespace {

constexpr int kHistogramBins = 50;

struct Globals {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::vector<std::string> args;
};

std::string hash_json(const json &j) { return util::hex64(util::fnv1a64(j.dump())); }

/// Refuses to overwrite any input.
void check_outputs(const std::vector<std::string> &inputs,
                   const std::vector<std::string> &outputs) {
  for (const auto &o: outputs)
    for (const auto &i: inputs)
      if (fs::weakly_canonical(o) == fs::weakly_canonical(i))
        throw ConfigError({ "output '" + o + "' would overwrite input '" + i + "'" });
}

class ManifestWriter {
public:
  ManifestWriter(std::string command, const Globals &g)
      : start_(std::chrono::steady_clock::now()) {
    m_.command = std::move(command);
    m_.args = g.args;
    m_.seed = g.seed;
    m_.threads = g.threads;
  }

  RunManifest &manifest() { return m_; }

  void input(const std::string &path) { m_.inputs[path] = util::file_hash(path); }
  void output(const std::string &path) { m_.outputs.push_back(path); }

  void write(const std::string &path) {
    m_.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    util::write_file_atomic(path, m_.to_json().dump(2) + "\n");
  }

private:
  RunManifest m_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<data::Record> load_jsonl(const std::string &path, data::Representation *rep) {
  return data::read_jsonl(util::read_file(path), rep);
}

const data::EncodedSet *non_empty(const data::EncodedSet &s) {
  return s.size() > 0 ? &s : nullptr;
}

struct EncodedSplits {
  data::EncodedSet train, valid, test;
};

EncodedSplits encode_all(const std::vector<data::Record> &records, const Vocabulary &vocab,
                         data::Representation rep, const std::string &property,
                         const data::TargetScaler &scaler, int max_len) {
  return { data::encode_split(records, data::Split::kTrain, vocab, rep, property, scaler, max_len),
           data::encode_split(records, data::Split::kValid, vocab, rep, property, scaler, max_len),
           data::encode_split(records, data::Split::kTest, vocab, rep, property, scaler, max_len) };
}

void print_metrics(std::ostream &out, const std::vector<metrics::MetricsReport> &reports) {
  for (const auto &m: reports)
    out << "  " << std::left << std::setw(6) << m.split << " n=" << m.n
        << " mae=" << util::format_double(m.mae) << " rmse=" << util::format_double(m.rmse)
        << " r2=" << util::format_double(m.r2) << "\n";
}

std::string canonical_property(const std::string &p) {
  std::string lower = p;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower != "qed" && lower != "logp" && lower != "molwt")
    throw ConfigError({ "property must be qed, logp or molwt, not '" + p + "'" });
  return lower;
}

// ---- tokenize ---------------------------------------------------------------

struct TokenizeArgs {
  std::string input, output, rejects, representation = "ais";
  double train = 0.8, valid = 0.1, test = 0.1;
};

int cmd_tokenize(const TokenizeArgs &a, const Globals &g, std::ostream &out, std::ostream &err) {
  const auto rep = data::parse_representation(a.representation);
  data::SplitSpec spec{ a.train, a.valid, a.test, g.seed.value_or(42) };
  spec.validate();
  const std::string rejects = a.rejects.empty() ? a.output + ".rejects.csv" : a.rejects;
  check_outputs({ a.input }, { a.output, rejects });

  ManifestWriter mw("tokenize", g);
  mw.manifest().config_hash = hash_json({ { "representation", a.representation },
                                          { "train", spec.train },
                                          { "valid", spec.valid },
                                          { "test", spec.test },
                                          { "seed", spec.seed } });
  auto loaded = data::load_csv(a.input, data::ColumnMap::zinc(), g.threads);
  mw.input(a.input);
  data::assign_splits(loaded.records, spec);

  std::string text;
  std::size_t tokens = 0;
  std::set<std::string> distinct;
  for (const auto &r: loaded.records) {
    text += data::to_jsonl_line(r, rep);
    tokens += r.tokens(rep).size();
    distinct.insert(r.tokens(rep).begin(), r.tokens(rep).end());
  }
  util::write_file_atomic(a.output, text);
  util::write_file_atomic(rejects, data::rejects_csv(loaded.rejects));
  mw.output(a.output);
  mw.output(rejects);
  mw.manifest().extra = { { "records", loaded.records.size() },
                          { "rejects", loaded.rejects.size() },
                          { "duplicates", loaded.duplicates },
                          { "tokens", tokens },
                          { "distinct_tokens", distinct.size() } };
  mw.write(a.output + ".manifest.json");

  out << "records: " << loaded.records.size() << " (train "
      << data::count_split(loaded.records, data::Split::kTrain) << ", valid "
      << data::count_split(loaded.records, data::Split::kValid) << ", test "
      << data::count_split(loaded.records, data::Split::kTest) << ")\n"
      << "rejected: " << loaded.rejects.size() << "\n"
      << "duplicates: " << loaded.duplicates << "\n"
      << a.representation << " tokens: " << tokens << " (" << distinct.size() << " distinct)\n";
  if (!loaded.rejects.empty())
    err << "warning: " << loaded.rejects.size() << " row(s) rejected, see " << rejects << "\n";
  return kExitOk;
}

// ---- vocab ------------------------------------------------------------------

struct VocabArgs {
  std::string input, output;
  int min_count = 1;
};

int cmd_vocab(const VocabArgs &a, const Globals &g, std::ostream &out) {
  check_outputs({ a.input }, { a.output });
  ManifestWriter mw("vocab", g);
  mw.manifest().config_hash = hash_json({ { "min_count", a.min_count } });
  data::Representation rep = data::Representation::kAis;
  const auto records = load_jsonl(a.input, &rep);
  mw.input(a.input);
  std::vector<TokenSeq> corpus;
  corpus.reserve(records.size());
  for (const auto &r: records)
    corpus.push_back(r.tokens(rep));
  const Vocabulary vocab = build_vocab(corpus, a.min_count, g.threads);
  save_vocab(vocab, a.output);
  mw.output(a.output);
  mw.manifest().extra = { { "representation", std::string(data::to_string(rep)) },
                          { "size_without_specials", vocab.size_without_specials() },
                          { "vocab_hash", vocab.hash() } };
  mw.write(a.output + ".manifest.json");
  out << "vocabulary size (excluding specials): " << vocab.size_without_specials() << "\n"
      << "representation: " << data::to_string(rep) << "\n"
      << "hash: " << vocab.hash() << "\n";
  return kExitOk;
}

// ---- train / train-ensemble -------------------------------------------------

struct TrainArgs {
  std::string config, data, vocab, out, property = "qed";
};

struct Prepared {
  std::vector<data::Record> records;
  data::Representation rep = data::Representation::kAis;
  Vocabulary vocab;
  nn::ArtifactInfo info;
};

Prepared prepare(const TrainArgs &a, ManifestWriter &mw) {
  Prepared p;
  p.records = load_jsonl(a.data, &p.rep);
  mw.input(a.data);
  p.vocab = load_vocab(a.vocab);
  mw.input(a.vocab);
  const std::string property = canonical_property(a.property);
  p.info = { property, p.rep, p.vocab.hash(), p.vocab.size(),
             data::TargetScaler::fit(p.records, data::default_scaled_properties()) };
  return p;
}

int cmd_train(const TrainArgs &a, const Globals &g, std::ostream &out) {
  check_outputs({ a.config, a.data, a.vocab }, { a.out });
  ManifestWriter mw("train", g);
  nn::ModelConfig config = nn::ModelConfig::from_json(nn::read_json_file(a.config));
  mw.input(a.config);
  if (g.seed)
    config.seed = *g.seed;
  mw.manifest().config_hash = hash_json(config.to_json());
  Prepared p = prepare(a, mw);
  const auto sets = encode_all(p.records, p.vocab, p.rep, p.info.property, p.info.scaler,
                               config.max_len);
  const nn::TrainData td{ &sets.train, non_empty(sets.valid), non_empty(sets.test),
                          p.info.property, p.info.scaler };
  const auto res = nn::train(config, p.vocab.size(), td);

  const fs::path root(a.out);
  nn::save_model_dir(a.out, res.model, p.info);
  const std::string report = (root / "train_report.json").string();
  util::write_file_atomic(report, res.report.to_json().dump(2) + "\n");
  for (const char *f: { "model.json", "params.bin", "train_report.json" })
    mw.output((root / f).string());
  mw.manifest().extra = { { "vocab_hash", p.vocab.hash() },
                          { "representation", std::string(data::to_string(p.rep)) },
                          { "property", p.info.property } };
  mw.write((root / "run_manifest.json").string());

  out << "trained " << nn::to_string(config.encoder) << " on " << sets.train.size()
      << " rows for " << config.epochs << " epoch(s); best epoch " << res.report.best_epoch
      << "\n";
  print_metrics(out, res.report.final_metrics);
  return kExitOk;
}

int cmd_train_ensemble(const TrainArgs &a, const Globals &g, std::ostream &out) {
  check_outputs({ a.config, a.data, a.vocab }, { a.out });
  ManifestWriter mw("train-ensemble", g);
  auto config = ensemble::EnsembleConfig::from_json(nn::read_json_file(a.config));
  mw.input(a.config);
  if (g.seed)
    config.seed = *g.seed;
  mw.manifest().config_hash = hash_json(config.to_json());
  Prepared p = prepare(a, mw);
  const auto sets = encode_all(p.records, p.vocab, p.rep, p.info.property, p.info.scaler,
                               config.base_configs.at(0).max_len);
  const nn::TrainData td{ &sets.train, non_empty(sets.valid), non_empty(sets.test),
                          p.info.property, p.info.scaler };
  const auto res = ensemble::train_ensemble(config, p.info, td, g.threads);

  const fs::path root(a.out);
  ensemble::save_ensemble(res.model, a.out);
  util::write_file_atomic((root / "ensemble_report.json").string(),
                          res.report.to_json().dump(2) + "\n");
  for (const auto &e: fs::directory_iterator(root))
    if (e.path().filename() != "run_manifest.json")
      mw.output(e.path().string());
  std::sort(mw.manifest().outputs.begin(), mw.manifest().outputs.end());
  mw.manifest().extra = { { "vocab_hash", p.vocab.hash() },
                          { "representation", std::string(data::to_string(p.rep)) },
                          { "property", p.info.property } };
  mw.write((root / "run_manifest.json").string());

  for (std::size_t k = 0; k < res.report.base_reports.size(); ++k) {
    out << "base " << k << " (" << experiment::variant_name(config.base_configs[k]) << ")\n";
    print_metrics(out, res.report.base_reports[k].final_metrics);
  }
  out << "ensemble (" << config.bagging_size << " x " << ensemble::to_string(config.meta_learner)
      << ")\n";
  print_metrics(out, res.report.final_metrics);
  return kExitOk;
}

// ---- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
  std::string model, data, vocab, out, predictions;
  std::vector<std::string> splits = { "test" };
};

int cmd_evaluate(const EvaluateArgs &a, const Globals &g, std::ostream &out) {
  std::vector<std::string> outputs = { a.out };
  if (!a.predictions.empty())
    outputs.push_back(a.predictions);
  check_outputs({ a.data, a.vocab }, outputs);
  ManifestWriter mw("evaluate", g);
  mw.manifest().config_hash = hash_json({ { "splits", a.splits } });

  const bool is_ensemble = fs::exists(fs::path(a.model) / "manifest.json");
  std::optional<nn::LoadedModel> single;
  std::optional<ensemble::EnsembleModel> ens;
  const nn::ArtifactInfo *info = nullptr;
  int max_len = 0;
  if (is_ensemble) {
    ens = ensemble::load_ensemble(a.model);
    info = &ens->info;
    max_len = ens->config.base_configs[0].max_len;
  } else {
    single = nn::load_model_dir(a.model);
    info = &single->info;
    max_len = single->model.config().max_len;
  }
  for (const auto &e: fs::directory_iterator(a.model))
    if (e.is_regular_file() && e.path().filename() != "run_manifest.json")
      mw.input(e.path().string());

  data::Representation rep = data::Representation::kAis;
  const auto records = load_jsonl(a.data, &rep);
  mw.input(a.data);
  const Vocabulary vocab = load_vocab(a.vocab);
  mw.input(a.vocab);
  nn::check_vocab(*info, vocab);
  if (rep != info->representation)
    throw VocabMismatch("data holds " + std::string(data::to_string(rep))
                        + " tokens but the model was trained on "
                        + std::string(data::to_string(info->representation)));

  std::vector<metrics::MetricsReport> reports;
  std::string pred_csv = "property,split,true,pred\n";
  for (const auto &split_name: a.splits) {
    const auto split = data::parse_split(split_name);
    const auto set = data::encode_split(records, split, vocab, rep, info->property,
                                        info->scaler, max_len);
    if (set.size() == 0)
      throw EmptyInput("split '" + split_name + "' has no records");
    const auto truth = nn::inverse_scaled(info->scaler, info->property, set.targets);
    const auto pred = is_ensemble
                          ? ensemble::predict_ensemble(*ens, set)
                          : nn::inverse_scaled(info->scaler, info->property,
                                               nn::predict_set(single->model, set));
    reports.push_back(metrics::evaluate(info->property, std::string(data::to_string(split)),
                                        truth, pred));
    for (std::size_t i = 0; i < set.size(); ++i)
      pred_csv += data::csv_line({ info->property, std::string(data::to_string(split)),
                                   util::format_double(truth[i]),
                                   util::format_double(pred[i]) });
  }
  util::write_file_atomic(a.out, metrics::to_csv(reports));
  mw.output(a.out);
  if (!a.predictions.empty()) {
    util::write_file_atomic(a.predictions, pred_csv);
    mw.output(a.predictions);
  }
  mw.write(a.out + ".manifest.json");
  print_metrics(out, reports);
  return kExitOk;
}

// ---- report -----------------------------------------------------------------

struct ReportArgs {
  std::string predictions, out;
};

struct Series {
  std::vector<double> truth, pred;
};

std::string histogram_csv(const Series &s) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto *v: { &s.truth, &s.pred })
    for (double x: *v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / kHistogramBins;
  auto bin = [&](double x) {
    const auto b = static_cast<int>(std::floor((x - lo) / width));
    return std::clamp(b, 0, kHistogramBins - 1);
  };
  std::vector<std::size_t> ct(kHistogramBins, 0), cp(kHistogramBins, 0);
  for (double x: s.truth)
    ++ct[static_cast<std::size_t>(bin(x))];
  for (double x: s.pred)
    ++cp[static_cast<std::size_t>(bin(x))];
  std::string out = "bin,lo,hi,true_count,pred_count\n";
  for (int b = 0; b < kHistogramBins; ++b) {
    const double e0 = lo + b * width;
    const double e1 = b + 1 == kHistogramBins ? hi : lo + (b + 1) * width;
    out += data::csv_line({ std::to_string(b), util::format_double(e0), util::format_double(e1),
                            std::to_string(ct[static_cast<std::size_t>(b)]),
                            std::to_string(cp[static_cast<std::size_t>(b)]) });
  }
  return out;
}

double parse_number(const std::string &s, std::size_t row) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw FormatError("row " + std::to_string(row) + ": '" + s + "' is not a finite number");
  return v;
}

int cmd_report(const ReportArgs &a, const Globals &g, std::ostream &out) {
  ManifestWriter mw("report", g);
  const auto rows = data::parse_csv(util::read_file(a.predictions));
  mw.input(a.predictions);
  if (rows.empty() || rows[0] != data::CsvRow{ "property", "split", "true", "pred" })
    throw FormatError("predictions file must have the header property,split,true,pred");
  std::map<std::pair<std::string, std::string>, Series> groups;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto &r = rows[i];
    if (r.size() != 4)
      throw FormatError("row " + std::to_string(i) + " has " + std::to_string(r.size())
                        + " fields, expected 4");
    auto &s = groups[{ r[0], r[1] }];
    s.truth.push_back(parse_number(r[2], i));
    s.pred.push_back(parse_number(r[3], i));
  }
  const fs::path root(a.out);
  check_outputs({ a.predictions }, {});
  for (const auto &[key, s]: groups) {
    const std::string stem = key.first + "_" + key.second;
    std::string scatter = "true,pred\n";
    for (std::size_t i = 0; i < s.truth.size(); ++i)
      scatter += util::format_double(s.truth[i]) + "," + util::format_double(s.pred[i]) + "\n";
    const std::string sp = (root / ("scatter_" + stem + ".csv")).string();
    const std::string hp = (root / ("hist_" + stem + ".csv")).string();
    check_outputs({ a.predictions }, { sp, hp });
    util::write_file_atomic(sp, scatter);
    util::write_file_atomic(hp, histogram_csv(s));
    mw.output(sp);
    mw.output(hp);
    out << stem << ": " << s.truth.size() << " points\n";
  }
  mw.write((root / "run_manifest.json").string());
  return kExitOk;
}

// ---- ablate -----------------------------------------------------------------

struct AblateArgs {
  std::string config, out, input;
};

int cmd_ablate(const AblateArgs &a, const Globals &g, std::ostream &out) {
  ManifestWriter mw("ablate", g);
  auto config = experiment::AblationConfig::from_json(nn::read_json_file(a.config));
  mw.input(a.config);
  if (!a.input.empty())
    config.data = a.input;
  if (g.seed)
    config.ensemble.seed = *g.seed;
  mw.manifest().config_hash = hash_json(config.to_json());
  const fs::path root(a.out);
  const std::string csv = (root / "ablation.csv").string();
  check_outputs({ a.config, config.data }, { csv });

  auto loaded = data::load_csv(config.data, data::ColumnMap::zinc(), g.threads);
  mw.input(config.data);
  if (config.rows > 0 && loaded.records.size() > config.rows)
    loaded.records.resize(config.rows);
  out << "ablation on " << loaded.records.size() << " records\n";
  const auto res = experiment::run_ablation(config, std::move(loaded.records), g.threads, &out);

  util::write_file_atomic(csv, res.to_csv());
  util::write_file_atomic((root / "ablation_config.json").string(), config.to_json().dump(2) + "\n");
  mw.output(csv);
  mw.output((root / "ablation_config.json").string());
  mw.manifest().extra = { { "vocab_hash", res.vocab_hash }, { "vocab_size", res.vocab_size } };
  mw.write((root / "run_manifest.json").string());
  out << res.to_csv();
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{ "Atom-in-SMILES molecular property prediction toolkit", "aisens" };
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for splits and training (overrides config files)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 1024));
  for (int i = 1; i < argc; ++i)
    g.args.emplace_back(argv[i]);

  std::function<int()> action;

  TokenizeArgs ta;
  auto *tok = app.add_subcommand("tokenize", "Parse and tokenize a CSV into JSONL");
  tok->add_option("--input", ta.input, "CSV with smiles, qed, logP, MolWt")->required();
  tok->add_option("--representation", ta.representation, "ais or smiles");
  tok->add_option("--output", ta.output, "JSONL output")->required();
  tok->add_option("--rejects", ta.rejects, "Rejects CSV (default: <output>.rejects.csv)");
  tok->add_option("--train", ta.train, "Train fraction");
  tok->add_option("--valid", ta.valid, "Validation fraction");
  tok->add_option("--test", ta.test, "Test fraction");
  tok->callback([&] { action = [&] { return cmd_tokenize(ta, g, out, err); }; });

  VocabArgs va;
  auto *voc = app.add_subcommand("vocab", "Build a token vocabulary from JSONL");
  voc->add_option("--input", va.input, "Tokenized JSONL")->required();
  voc->add_option("--min-count", va.min_count, "Minimum token frequency");
  voc->add_option("--output", va.output, "TSV output")->required();
  voc->callback([&] { action = [&] { return cmd_vocab(va, g, out); }; });

  TrainArgs tr;
  auto *trn = app.add_subcommand("train", "Train one sequence regressor");
  TrainArgs te;
  auto *tre = app.add_subcommand("train-ensemble", "Train the stacked ensemble");
  for (auto [cmd, args]: { std::pair{ trn, &tr }, std::pair{ tre, &te } }) {
    cmd->add_option("--config", args->config, "JSON config")->required();
    cmd->add_option("--data", args->data, "Tokenized JSONL")->required();
    cmd->add_option("--vocab", args->vocab, "Vocabulary TSV")->required();
    cmd->add_option("--out", args->out, "Output directory")->required();
    cmd->add_option("--property", args->property, "qed, logp or molwt");
  }
  trn->callback([&] { action = [&] { return cmd_train(tr, g, out); }; });
  tre->callback([&] { action = [&] { return cmd_train_ensemble(te, g, out); }; });

  EvaluateArgs ea;
  auto *ev = app.add_subcommand("evaluate", "Score a trained model or ensemble");
  ev->add_option("--model", ea.model, "Model or ensemble directory")->required();
  ev->add_option("--data", ea.data, "Tokenized JSONL")->required();
  ev->add_option("--vocab", ea.vocab, "Vocabulary TSV")->required();
  ev->add_option("--split", ea.splits, "Splits to score (train, valid, test)")->delimiter(',');
  ev->add_option("--out", ea.out, "Metrics CSV")->required();
  ev->add_option("--predictions", ea.predictions, "Optional per-row predictions CSV");
  ev->callback([&] { action = [&] { return cmd_evaluate(ea, g, out); }; });

  ReportArgs ra;
  auto *rep = app.add_subcommand("report", "Scatter and histogram data from predictions");
  rep->add_option("--predictions", ra.predictions, "CSV from evaluate --predictions")->required();
  rep->add_option("--out", ra.out, "Output directory")->required();
  rep->callback([&] { action = [&] { return cmd_report(ra, g, out); }; });

  AblateArgs aa;
  auto *abl = app.add_subcommand("ablate", "Run the model x representation grid");
  abl->add_option("--config", aa.config, "Ablation JSON config")->required();
  abl->add_option("--out", aa.out, "Output directory")->required();
  abl->add_option("--input", aa.input, "CSV overriding the config's data path");
  abl->callback([&] { action = [&] { return cmd_ablate(aa, g, out); }; });

  for (auto *sub: app.get_subcommands({}))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError &e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const EmptyInput &e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  std::vector<const char *> argv = { "aisens" };
  for (const auto &a: args)
    argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace aisens::cli
