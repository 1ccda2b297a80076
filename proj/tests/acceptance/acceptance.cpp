//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run over the bundled ZINC-style corpus. Prints one PASS/FAIL
// line per criterion and exits non-zero when any criterion fails.
//

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aisens/ais/tokenizer.hpp"
#include "aisens/chem/descriptors.hpp"
#include "aisens/chem/molecule.hpp"
#include "aisens/cli/cli.hpp"
#include "aisens/data/csv.hpp"
#include "aisens/data/dataset.hpp"
#include "aisens/ensemble/ensemble.hpp"
#include "aisens/error.hpp"
#include "aisens/experiment/ablation.hpp"
#include "aisens/metrics/metrics.hpp"
#include "aisens/nn/train.hpp"
#include "aisens/util/io.hpp"
#include "aisens/vocab/vocabulary.hpp"

#include "../unit/gradcheck.hpp"
#include "../unit/metric_oracle.hpp"

namespace {

using namespace aisens;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Tolerances and budgets.
constexpr int kSmilesVocabLo = 60, kSmilesVocabHi = 100;
constexpr int kAisVocabLo = 500, kAisVocabHi = 1500;
constexpr double kVocabBudgetSeconds = 120;
constexpr std::size_t kVocabMinRows = 50000;
constexpr std::size_t kRoundTripRows = 10000;
constexpr const char *kStyrene = "C(=C)C1=CC=CC=C1";
constexpr const char *kStyreneGolden =
    "[CH;!R;CC] ( = [CH2;!R;C] ) [C;R;CCC] 1 = [CH;R;CC] [CH;R;CC] = [CH;R;CC] "
    "[CH;R;CC] = [CH;R;CC] 1";
constexpr std::size_t kRingMolecules = 500;
constexpr std::size_t kWeightRows = 10000;
constexpr double kWeightTolerance = 0.5;
constexpr double kWeightAgreement = 0.99;
constexpr int kMetricVectors = 1000;
constexpr double kMetricTolerance = 1e-12;
constexpr double kGradTolerance = 1e-4;
constexpr double kGradBudgetSeconds = 60;
constexpr std::size_t kDeskRows = 5000;
constexpr std::uint64_t kDeskSeed = 7;
constexpr double kBaseQedMae = 0.05;
constexpr double kEnsembleSlack = 1.05;
constexpr double kDeskBudgetSeconds = 15 * 60;
constexpr std::uint64_t kAblationSeeds[] = { 7, 8, 9 };
constexpr int kAblationWinsNeeded = 2;
constexpr std::size_t kDeterminismRows = 1000;
constexpr std::size_t kBootstrapN = 1000;
constexpr int kBootstrapSeeds = 50;
constexpr double kBootstrapCenter = 0.632;
constexpr double kBootstrapTolerance = 0.03;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

struct Corpus {
  std::string path;
  data::LoadResult loaded;
  double load_seconds = 0;
};

// ---- 1 ----------------------------------------------------------------------

Outcome vocabulary_contrast(const Corpus &c) {
  const auto t0 = Clock::now();
  std::vector<TokenSeq> smiles, ais;
  for (const auto &r: c.loaded.records) {
    smiles.push_back(r.tokens_smiles);
    ais.push_back(r.tokens_ais);
  }
  const int ns = build_vocab(smiles).size_without_specials();
  const int na = build_vocab(ais).size_without_specials();
  const double secs = c.load_seconds + seconds_since(t0);
  const std::size_t n = c.loaded.records.size();
  const bool s_ok = ns >= kSmilesVocabLo && ns <= kSmilesVocabHi;
  const bool a_ok = na >= kAisVocabLo && na <= kAisVocabHi;
  const bool size_ok = n >= kVocabMinRows;
  const bool time_ok = secs < kVocabBudgetSeconds;
  return { s_ok && a_ok && size_ok && time_ok,
           std::to_string(n) + " molecules; smiles vocabulary " + std::to_string(ns)
               + (s_ok ? " in" : " NOT in") + " [60,100]; ais vocabulary " + std::to_string(na)
               + (a_ok ? " in" : " NOT in") + " [500,1500]; " + fmt(secs, 1) + " s" };
}

// ---- 2 ----------------------------------------------------------------------

Outcome round_trip(const std::vector<data::CsvRow> &rows) {
  std::size_t parsed = 0, exact = 0, skipped = 0;
  std::string first_bad;
  for (std::size_t i = 1; i < rows.size() && i <= kRoundTripRows; ++i) {
    const std::string &s = rows[i][0];
    ais::AisSequence seq;
    try {
      seq = ais::smiles_to_ais(s);
    } catch (const SmilesError &) {
      ++skipped;
      continue;
    }
    ++parsed;
    // Round trip through the rendered token strings, as stored on disk.
    ais::AisSequence reparsed;
    for (const auto &t: seq.rendered())
      reparsed.tokens.push_back(ais::parse_token(t));
    if (ais::ais_to_smiles(reparsed) == s)
      ++exact;
    else if (first_bad.empty())
      first_bad = s;
  }
  const std::string golden = ais::smiles_to_ais(kStyrene).to_line();
  const bool golden_ok = golden == kStyreneGolden;
  std::string detail = std::to_string(exact) + "/" + std::to_string(parsed)
                       + " exact round trips (" + std::to_string(skipped) + " unparseable)";
  detail += golden_ok ? "; styrene golden matches" : "; styrene golden differs: " + golden;
  if (!first_bad.empty())
    detail += "; first mismatch " + first_bad;
  return { parsed > 0 && exact == parsed && golden_ok, detail };
}

// ---- 3 ----------------------------------------------------------------------

// A bond lies on a cycle iff its endpoints stay connected without it.
bool bond_on_cycle(const chem::Molecule &m, int bond) {
  const int src = m.bond(bond).a, dst = m.bond(bond).b;
  std::vector<char> seen(static_cast<std::size_t>(m.num_atoms()), 0);
  std::queue<int> q;
  q.push(src);
  seen[static_cast<std::size_t>(src)] = 1;
  while (!q.empty()) {
    const int at = q.front();
    q.pop();
    if (at == dst)
      return true;
    for (const auto &n: m.neighbors(at))
      if (n.bond != bond && !seen[static_cast<std::size_t>(n.atom)]) {
        seen[static_cast<std::size_t>(n.atom)] = 1;
        q.push(n.atom);
      }
  }
  return false;
}

Outcome rings_and_weights(const std::vector<data::CsvRow> &rows) {
  std::size_t molecules = 0, ring_mismatch = 0;
  for (std::size_t i = 1; i < rows.size() && molecules < kRingMolecules; ++i) {
    chem::Molecule m;
    try {
      m = chem::parse_smiles(rows[i][0]);
    } catch (const SmilesError &) {
      continue;
    }
    ++molecules;
    std::vector<char> atom_ring(static_cast<std::size_t>(m.num_atoms()), 0);
    bool ok = true;
    for (int b = 0; b < m.num_bonds(); ++b) {
      const bool oracle = bond_on_cycle(m, b);
      ok = ok && m.bond(b).in_ring == oracle;
      if (oracle)
        atom_ring[static_cast<std::size_t>(m.bond(b).a)] =
            atom_ring[static_cast<std::size_t>(m.bond(b).b)] = 1;
    }
    for (int a = 0; a < m.num_atoms(); ++a)
      ok = ok && m.atom(a).in_ring == static_cast<bool>(atom_ring[static_cast<std::size_t>(a)]);
    ring_mismatch += !ok;
  }

  const auto header = rows.at(0);
  const auto col = static_cast<std::size_t>(
      std::find(header.begin(), header.end(), "MolWt") - header.begin());
  std::size_t sampled = 0, agree = 0;
  for (std::size_t i = 1; i < rows.size() && sampled < kWeightRows; ++i) {
    ++sampled;
    try {
      const double w = chem::mol_weight(chem::parse_smiles(rows[i][0]));
      agree += std::abs(w - std::stod(rows[i].at(col))) <= kWeightTolerance;
    } catch (const std::exception &) {
      // Unparseable rows count as disagreement.
    }
  }
  const double frac = static_cast<double>(agree) / static_cast<double>(std::max<std::size_t>(sampled, 1));
  const bool rings_ok = molecules == kRingMolecules && ring_mismatch == 0;
  const bool weight_ok = sampled == kWeightRows && frac >= kWeightAgreement;
  return { rings_ok && weight_ok,
           "ring flags match the connectivity oracle on " + std::to_string(molecules - ring_mismatch)
               + "/" + std::to_string(molecules) + " molecules; MolWt within 0.5 on "
               + fmt(100 * frac, 2) + "% of " + std::to_string(sampled) + " rows" };
}

// ---- 4 ----------------------------------------------------------------------

Outcome metric_formulas() {
  util::Rng rng(20240607);
  double worst = 0;
  for (int t = 0; t < kMetricVectors; ++t) {
    const std::size_t n =
        t % 50 == 0 ? 4097 + util::uniform_index(rng, 6000) : 2 + util::uniform_index(rng, 500);
    std::vector<double> y(n), p(n);
    const double scale = std::pow(10.0, util::uniform(rng, -2, 3));
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = scale * util::uniform(rng, -1, 1);
      p[i] = y[i] + scale * util::uniform(rng, -0.5, 0.5);
    }
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    worst = std::max({ worst, rel(metrics::mae(y, p), test::oracle_mae(y, p)),
                       rel(metrics::rmse(y, p), test::oracle_rmse(y, p)),
                       rel(metrics::r2(y, p), test::oracle_r2(y, p)) });
  }
  const std::vector<double> y = { 1, 2, 3, 4 }, p = { 1.5, 2.5, 2.5, 4 };
  const bool examples = metrics::mae(y, p) == 0.375 && metrics::rmse(y, p) == std::sqrt(0.75 / 4)
                        && metrics::r2(y, p) == 1 - 0.75 / 5;
  return { worst <= kMetricTolerance && examples,
           "max relative deviation from the long-double oracle " + fmt(worst * 1e15, 3)
               + "e-15 over " + std::to_string(kMetricVectors) + " vectors; worked examples "
               + (examples ? "exact" : "WRONG") };
}

// ---- 5 ----------------------------------------------------------------------

std::vector<nn::ModelConfig> gradient_variants() {
  nn::ModelConfig base;
  base.embed_dim = 8;
  base.hidden_size = 16;
  base.attention_heads = 2;
  base.num_layers = 2;
  base.max_len = 7;
  base.seed = 11;
  std::vector<nn::ModelConfig> out;
  auto add = [&](auto &&edit) {
    nn::ModelConfig c = base;
    edit(c);
    out.push_back(c);
  };
  add([](nn::ModelConfig &c) { c.encoder = nn::Encoder::kBagOfTokens; });
  add([](nn::ModelConfig &c) { c.encoder = nn::Encoder::kBiRecurrent; });
  add([](nn::ModelConfig &c) {
    c.encoder = nn::Encoder::kBiRecurrent;
    c.num_layers = 1;
    c.pooling = nn::Pooling::kFirst;
  });
  add([](nn::ModelConfig &c) { c.encoder = nn::Encoder::kSelfAttention; });
  add([](nn::ModelConfig &c) {
    c.encoder = nn::Encoder::kSelfAttention;
    c.positional = nn::Positional::kLearned;
    c.recurrent_head = false;
    c.pooling = nn::Pooling::kFirst;
  });
  return out;
}

Outcome gradients() {
  const auto t0 = Clock::now();
  double worst = 0;
  std::string worst_name;
  std::size_t groups = 0, failed = 0;
  for (double dropout: { 0.0, 0.2 })
    for (nn::ModelConfig c: gradient_variants()) {
      c.dropout = dropout;
      nn::Model m(c, 12);
      const auto batch = test::tiny_batch(5, 3, c.max_len, 12);
      for (const auto &g: test::gradient_check(m, batch)) {
        ++groups;
        // Groups whose exact gradient vanishes (the attention key bias)
        // compare two round-off values; both must be negligible instead.
        const bool ok = g.ok(kGradTolerance);
        failed += !ok;
        if (g.analytic_norm > 1e-8 && g.rel_error > worst) {
          worst = g.rel_error;
          worst_name = std::string(nn::to_string(c.encoder)) + "/" + g.name;
        }
      }
    }
  const double secs = seconds_since(t0);
  return { failed == 0 && secs < kGradBudgetSeconds,
           std::to_string(groups - failed) + "/" + std::to_string(groups)
               + " parameter groups pass; worst relative error " + fmt(worst * 1e6, 3) + "e-6 ("
               + worst_name + "); " + fmt(secs, 1) + " s" };
}

// ---- 6 ----------------------------------------------------------------------

std::vector<data::Record> desk_records(const Corpus &c) {
  std::vector<data::Record> r(c.loaded.records.begin(),
                              c.loaded.records.begin()
                                  + static_cast<long>(std::min(kDeskRows, c.loaded.records.size())));
  data::assign_splits(r, data::SplitSpec{});
  return r;
}

Outcome desk_learning(const Corpus &c, int threads) {
  const auto t0 = Clock::now();
  const auto records = desk_records(c);
  const auto rep = data::Representation::kAis;
  std::vector<TokenSeq> corpus;
  for (const auto &r: records)
    corpus.push_back(r.tokens(rep));
  const Vocabulary vocab = build_vocab(corpus);
  const auto scaler = data::TargetScaler::fit(records, data::default_scaled_properties());

  ensemble::EnsembleConfig cfg;
  cfg.seed = kDeskSeed;
  for (const auto &b: cfg.base_configs)
    if (b.embed_dim != 32 || b.hidden_size != 64 || b.epochs != 10)
      return { false, "desk configuration drifted from embed 32 / hidden 64 / 10 epochs" };
  const int max_len = cfg.base_configs[0].max_len;
  const auto train = data::encode_split(records, data::Split::kTrain, vocab, rep, "qed", scaler, max_len);
  const auto valid = data::encode_split(records, data::Split::kValid, vocab, rep, "qed", scaler, max_len);
  const auto test = data::encode_split(records, data::Split::kTest, vocab, rep, "qed", scaler, max_len);
  const nn::TrainData td{ &train, &valid, &test, "qed", scaler };
  const nn::ArtifactInfo info{ "qed", rep, vocab.hash(), vocab.size(), scaler };
  const auto res = ensemble::train_ensemble(cfg, info, td, threads);
  const double secs = seconds_since(t0);

  bool bases_ok = true;
  double best = std::numeric_limits<double>::infinity();
  std::string detail = std::to_string(records.size()) + " rows; base test QED MAE";
  for (std::size_t k = 0; k < res.report.base_reports.size(); ++k) {
    const double mae = res.report.base_reports[k].final_metrics.back().mae;
    bases_ok = bases_ok && mae < kBaseQedMae;
    best = std::min(best, mae);
    detail += (k ? ", " : " ") + experiment::variant_name(cfg.base_configs[k]) + "=" + fmt(mae);
  }
  const double ens = res.report.final_metrics.back().mae;
  const bool ens_ok = ens <= best * kEnsembleSlack;
  detail += "; ensemble " + fmt(ens) + (ens_ok ? " <= " : " > ") + fmt(best * kEnsembleSlack)
            + " (1.05 x best); " + fmt(secs, 0) + " s";
  return { bases_ok && ens_ok && secs < kDeskBudgetSeconds, detail };
}

// ---- 7 ----------------------------------------------------------------------

Outcome ablation_direction(const Corpus &c, int threads) {
  const auto t0 = Clock::now();
  std::vector<data::Record> records(
      c.loaded.records.begin(),
      c.loaded.records.begin() + static_cast<long>(std::min(kDeskRows, c.loaded.records.size())));
  int wins = 0;
  std::string detail;
  for (std::uint64_t seed: kAblationSeeds) {
    experiment::AblationConfig cfg;
    cfg.data = c.path;
    cfg.rows = kDeskRows;
    cfg.property = "qed";
    cfg.ensemble.seed = seed;
    const auto res = experiment::run_ablation(cfg, records, threads);
    const double a = res.ensemble_test_mae(data::Representation::kAis);
    const double s = res.ensemble_test_mae(data::Representation::kSmiles);
    wins += a <= s;
    detail += (detail.empty() ? "" : "; ") + std::string("seed ") + std::to_string(seed) + " ais "
              + fmt(a) + (a <= s ? " <= " : " > ") + "smiles " + fmt(s);
  }
  detail += "; " + std::to_string(wins) + "/3 seeds favour ais; " + fmt(seconds_since(t0), 0) + " s";
  return { wins >= kAblationWinsNeeded, detail };
}

// ---- 8 ----------------------------------------------------------------------

Outcome determinism(const Corpus &c) {
  const fs::path dir = fs::temp_directory_path() / ("aisens_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto p = [&](const std::string &name) { return (dir / name).string(); };

  // Sample CSV from the first rows of the corpus file.
  {
    std::istringstream in(util::read_file(c.path));
    std::string line, text;
    for (std::size_t i = 0; i <= kDeterminismRows && std::getline(in, line); ++i)
      text += line + "\n";
    util::write_file_atomic(p("sample.csv"), text);
  }
  util::write_file_atomic(p("model.json"),
                          R"({"epochs": 3, "embed_dim": 16, "hidden_size": 32, "max_len": 96})");
  util::write_file_atomic(
      p("ensemble.json"),
      R"({"bagging_size": 4, "base_configs": [)"
      R"({"epochs": 2, "embed_dim": 16, "hidden_size": 32, "max_len": 96},)"
      R"({"epochs": 2, "embed_dim": 16, "hidden_size": 32, "max_len": 96, "encoder": "BiRecurrent"}]})");

  std::ostringstream sink;
  std::vector<std::string> failures;
  std::size_t compared = 0;
  auto run = [&](std::vector<std::string> args) {
    if (cli::run_cli(args, sink, sink) != 0)
      failures.push_back("command failed: " + args[0]);
  };
  for (const char *tag: { "a", "b" }) {
    const std::string t = tag;
    run({ "--seed", "3", "tokenize", "--input", p("sample.csv"), "--output", p(t + ".jsonl") });
    run({ "vocab", "--input", p(t + ".jsonl"), "--output", p(t + ".tsv") });
    run({ "--seed", "7", "train", "--config", p("model.json"), "--data", p(t + ".jsonl"), "--vocab",
          p(t + ".tsv"), "--out", p(t + "_model") });
    run({ "evaluate", "--model", p(t + "_model"), "--data", p(t + ".jsonl"), "--vocab", p(t + ".tsv"),
          "--split", "train,valid,test", "--out", p(t + "_metrics.csv"), "--predictions",
          p(t + "_pred.csv") });
    run({ "--seed", "7", "train-ensemble", "--config", p("ensemble.json"), "--data", p(t + ".jsonl"),
          "--vocab", p(t + ".tsv"), "--out", p(t + "_ens") });
    run({ "evaluate", "--model", p(t + "_ens"), "--data", p(t + ".jsonl"), "--vocab", p(t + ".tsv"),
          "--out", p(t + "_ens_metrics.csv") });
  }
  for (const char *f: { ".jsonl", ".tsv", "_model/train_report.json", "_model/params.bin",
                        "_metrics.csv", "_pred.csv", "_ens/ensemble_report.json",
                        "_ens_metrics.csv" }) {
    ++compared;
    try {
      if (util::read_file(p(std::string("a") + f)) != util::read_file(p(std::string("b") + f)))
        failures.push_back(std::string("differs: ") + f);
    } catch (const std::exception &e) {
      failures.push_back(e.what());
    }
  }
  fs::remove_all(dir);
  std::string detail = std::to_string(compared - std::min(compared, failures.size())) + "/"
                       + std::to_string(compared)
                       + " artifacts byte-identical across repeated CLI runs";
  for (const auto &f: failures)
    detail += "; " + f;
  return { failures.empty(), detail };
}

// ---- 9 ----------------------------------------------------------------------

Outcome bootstrap_statistics() {
  double sum = 0, lo = 1, hi = 0;
  for (int s = 0; s < kBootstrapSeeds; ++s) {
    const auto idx = ensemble::bootstrap_indices(kBootstrapN, util::derive_seed(2024, static_cast<std::uint64_t>(s)));
    const double f = static_cast<double>(std::set<std::size_t>(idx.begin(), idx.end()).size())
                     / static_cast<double>(kBootstrapN);
    sum += f;
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  const double mean = sum / kBootstrapSeeds;
  return { std::abs(mean - kBootstrapCenter) <= kBootstrapTolerance,
           "mean distinct fraction " + fmt(mean) + " over 50 seeds (range " + fmt(lo, 3) + "-"
               + fmt(hi, 3) + "), target 0.632 +- 0.03" };
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{ "aisens acceptance run" };
  std::string data_path = std::string(AISENS_DATA_DIR) + "/zinc_style_60k.csv";
  std::vector<int> only;
  int threads = 1;
  app.add_option("--data", data_path, "ZINC-style CSV");
  app.add_option("--only", only, "Criteria to run (default all)")->delimiter(',');
  app.add_option("--threads", threads, "Worker threads for training");
  CLI11_PARSE(app, argc, argv);

  auto wanted = [&](int n) { return only.empty() || std::find(only.begin(), only.end(), n) != only.end(); };
  const char *names[] = { "",
                          "vocabulary contrast",
                          "tokenizer round trip",
                          "ring/valence oracles",
                          "metric formulas",
                          "gradient correctness",
                          "desk-scale learning",
                          "ablation direction",
                          "determinism",
                          "bootstrap statistics" };

  Corpus corpus;
  corpus.path = data_path;
  std::vector<data::CsvRow> raw;
  const bool need_records = wanted(1) || wanted(6) || wanted(7);
  try {
    if (need_records) {
      const auto t0 = Clock::now();
      corpus.loaded = data::load_csv(data_path, data::ColumnMap::zinc(), 1);
      corpus.load_seconds = seconds_since(t0);
    }
    if (wanted(2) || wanted(3))
      raw = data::parse_csv(util::read_file(data_path));
  } catch (const std::exception &e) {
    std::cerr << "cannot load " << data_path << ": " << e.what() << "\n";
    return 2;
  }

  int failed = 0;
  for (int n = 1; n <= 9; ++n) {
    if (!wanted(n))
      continue;
    Outcome o;
    try {
      switch (n) {
      case 1: o = vocabulary_contrast(corpus); break;
      case 2: o = round_trip(raw); break;
      case 3: o = rings_and_weights(raw); break;
      case 4: o = metric_formulas(); break;
      case 5: o = gradients(); break;
      case 6: o = desk_learning(corpus, threads); break;
      case 7: o = ablation_direction(corpus, threads); break;
      case 8: o = determinism(corpus); break;
      case 9: o = bootstrap_statistics(); break;
      }
    } catch (const std::exception &e) {
      o = { false, std::string("threw: ") + e.what() };
    }
    failed += !o.pass;
    std::printf("criterion %d %-22s %s  %s\n", n, names[n], o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
