//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include <Eigen/Dense>

#include "aisens/ensemble/ensemble.hpp"
#include "aisens/error.hpp"
#include "aisens/util/io.hpp"

namespace aisens::ensemble {

using nlohmann::json;

namespace {

constexpr std::uint64_t kMetaStream = 0x6d657461;  // "meta"
constexpr const char *kManifestFormat = "aisens-ensemble-1";

std::optional<MetaLearner> parse_meta(std::string_view s) {
  if (s == "MeanLinear")
    return MetaLearner::kMeanLinear;
  if (s == "RegressionStump")
    return MetaLearner::kRegressionStump;
  return std::nullopt;
}

void check_rows(const Stacked &x, std::span<const double> y) {
  if (x.rows == 0 || x.cols == 0)
    throw EmptyInput("meta-learner needs at least one row and one feature");
  if (y.size() != x.rows || x.values.size() != x.rows * x.cols)
    throw LengthMismatch("stacked rows and targets differ in size");
}

nn::ModelConfig with_seed(nn::ModelConfig c, std::uint64_t seed) {
  c.seed = seed;
  return c;
}

}  // namespace

std::string_view to_string(MetaLearner m) noexcept {
  return m == MetaLearner::kMeanLinear ? "MeanLinear" : "RegressionStump";
}

std::vector<nn::ModelConfig> EnsembleConfig::default_bases() {
  nn::ModelConfig sinusoidal;
  nn::ModelConfig learned;
  learned.positional = nn::Positional::kLearned;
  nn::ModelConfig recurrent;
  recurrent.encoder = nn::Encoder::kBiRecurrent;
  recurrent.num_layers = 2;
  return { sinusoidal, learned, recurrent };
}

std::uint64_t EnsembleConfig::meta_seed(std::size_t b) const {
  return util::derive_seed(util::derive_seed(seed, kMetaStream), b);
}

namespace {

std::vector<std::string> check(const EnsembleConfig &c) {
  std::vector<std::string> problems;
  if (c.base_configs.empty())
    problems.emplace_back("base_configs must hold at least one model");
  if (c.bagging_size < 1)
    problems.emplace_back("bagging_size must be >= 1");
  if (!std::isfinite(c.ridge) || c.ridge < 0)
    problems.emplace_back("ridge must be finite and >= 0");
  if (c.stacking_source != "ValidationHoldout")
    problems.emplace_back("stacking_source must be \"ValidationHoldout\"");
  for (std::size_t k = 0; k < c.base_configs.size(); ++k) {
    try {
      c.base_configs[k].validate();
    } catch (const ConfigError &e) {
      for (const auto &p: e.problems())
        problems.push_back("base_configs[" + std::to_string(k) + "]." + p);
    }
    if (c.base_configs[k].max_len != c.base_configs[0].max_len)
      problems.emplace_back("base_configs must share max_len");
  }
  return problems;
}

}  // namespace

void EnsembleConfig::validate() const {
  auto problems = check(*this);
  if (!problems.empty())
    throw ConfigError(std::move(problems));
}

json EnsembleConfig::to_json() const {
  json bases = json::array();
  for (const auto &b: base_configs)
    bases.push_back(b.to_json());
  return { { "base_configs", bases },
           { "bagging_size", bagging_size },
           { "meta_learner", std::string(ensemble::to_string(meta_learner)) },
           { "ridge", ridge },
           { "stacking_source", stacking_source },
           { "seed", seed } };
}

EnsembleConfig EnsembleConfig::from_json(const json &j) {
  EnsembleConfig c;
  std::vector<std::string> problems;
  if (!j.is_object())
    throw ConfigError({ "ensemble config must be a JSON object" });
  for (const auto &[key, v]: j.items()) {
    if (key == "base_configs") {
      if (!v.is_array()) {
        problems.emplace_back("base_configs must be an array");
        continue;
      }
      c.base_configs.clear();
      for (std::size_t k = 0; k < v.size(); ++k) {
        try {
          c.base_configs.push_back(nn::ModelConfig::from_json(v[k]));
        } catch (const ConfigError &e) {
          for (const auto &p: e.problems())
            problems.push_back("base_configs[" + std::to_string(k) + "]." + p);
          c.base_configs.emplace_back();
        }
      }
    } else if (key == "bagging_size") {
      if (v.is_number_integer())
        c.bagging_size = v.get<int>();
      else
        problems.emplace_back("bagging_size must be an integer");
    } else if (key == "meta_learner") {
      const auto m = v.is_string() ? parse_meta(v.get<std::string>()) : std::nullopt;
      if (m)
        c.meta_learner = *m;
      else
        problems.emplace_back("meta_learner must be \"MeanLinear\" or \"RegressionStump\"");
    } else if (key == "ridge") {
      if (v.is_number())
        c.ridge = v.get<double>();
      else
        problems.emplace_back("ridge must be a number");
    } else if (key == "stacking_source") {
      if (v.is_string())
        c.stacking_source = v.get<std::string>();
      else
        problems.emplace_back("stacking_source must be a string");
    } else if (key == "seed") {
      if (v.is_number_unsigned())
        c.seed = v.get<std::uint64_t>();
      else
        problems.emplace_back("seed must be a non-negative integer");
    } else {
      problems.push_back("unknown key '" + key + "'");
    }
  }
  for (auto &p: check(c))
    if (std::find(problems.begin(), problems.end(), p) == problems.end())
      problems.push_back(std::move(p));
  if (!problems.empty())
    throw ConfigError(std::move(problems));
  return c;
}

double MetaFit::predict(std::span<const double> x) const {
  if (kind == MetaLearner::kRegressionStump)
    return x[static_cast<std::size_t>(feature)] <= threshold ? left : right;
  double s = bias;
  for (std::size_t k = 0; k < weights.size(); ++k)
    s += weights[k] * x[k];
  return s;
}

json MetaFit::to_json() const {
  if (kind == MetaLearner::kRegressionStump)
    return { { "kind", "RegressionStump" },
             { "feature", feature },
             { "threshold", threshold },
             { "left", left },
             { "right", right } };
  return { { "kind", "MeanLinear" }, { "weights", weights }, { "bias", bias } };
}

MetaFit MetaFit::from_json(const json &j) {
  MetaFit m;
  try {
    const auto kind = parse_meta(j.at("kind").get<std::string>());
    if (!kind)
      throw FormatError("unknown meta-learner kind");
    m.kind = *kind;
    if (m.kind == MetaLearner::kRegressionStump) {
      m.feature = j.at("feature").get<int>();
      m.threshold = j.at("threshold").get<double>();
      m.left = j.at("left").get<double>();
      m.right = j.at("right").get<double>();
    } else {
      m.weights = j.at("weights").get<std::vector<double>>();
      m.bias = j.at("bias").get<double>();
    }
  } catch (const json::exception &e) {
    throw FormatError(std::string("bad meta-learner file: ") + e.what());
  }
  return m;
}

MetaFit fit_mean_linear(const Stacked &x, std::span<const double> y, double ridge) {
  check_rows(x, y);
  const auto n = static_cast<Eigen::Index>(x.rows);
  const auto k = static_cast<Eigen::Index>(x.cols);
  // Copies into Eigen-owned storage: vectorized reductions over borrowed
  // memory depend on its alignment, which would leak into the last bits.
  Eigen::MatrixXd X(n, k);
  Eigen::VectorXd Y(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < k; ++c)
      X(r, c) = x.values[static_cast<std::size_t>(r * k + c)];
    Y(r) = y[static_cast<std::size_t>(r)];
  }
  const Eigen::RowVectorXd xmean = X.colwise().mean();
  const double ymean = Y.mean();
  const Eigen::MatrixXd Xc = X.rowwise() - xmean;
  const Eigen::VectorXd Yc = Y.array() - ymean;
  const Eigen::VectorXd w0 = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));

  // Solve for the offset from equal weights; the minimum-norm solution
  // keeps unidentified directions at 1/K.
  Eigen::MatrixXd A = Xc.transpose() * Xc;
  const double lambda = ridge * A.trace() / static_cast<double>(k);
  A.diagonal().array() += lambda;
  const Eigen::VectorXd rhs = Xc.transpose() * (Yc - Xc * w0);
  const Eigen::VectorXd w = w0 + A.completeOrthogonalDecomposition().solve(rhs);

  MetaFit m;
  m.kind = MetaLearner::kMeanLinear;
  m.weights.assign(w.data(), w.data() + k);
  m.bias = ymean - xmean.dot(w);
  return m;
}

MetaFit fit_stump(const Stacked &x, std::span<const double> y) {
  check_rows(x, y);
  const std::size_t n = x.rows;
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  MetaFit best;
  best.kind = MetaLearner::kRegressionStump;
  best.left = best.right = total / static_cast<double>(n);
  double best_gain = 0;
  std::vector<std::size_t> order(n);
  for (std::size_t f = 0; f < x.cols; ++f) {
    auto val = [&](std::size_t r) { return x.values[r * x.cols + f]; };
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return val(a) < val(b); });
    double left_sum = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_sum += y[order[i]];
      if (!(val(order[i]) < val(order[i + 1])))
        continue;
      const auto nl = static_cast<double>(i + 1);
      const auto nr = static_cast<double>(n - i - 1);
      const double right_sum = total - left_sum;
      // Reduction in squared error relative to the single mean.
      const double gain = left_sum * left_sum / nl + right_sum * right_sum / nr
                          - total * total / static_cast<double>(n);
      if (gain > best_gain) {
        best_gain = gain;
        best.feature = static_cast<int>(f);
        best.threshold = 0.5 * (val(order[i]) + val(order[i + 1]));
        best.left = left_sum / nl;
        best.right = right_sum / nr;
      }
    }
  }
  return best;
}

std::vector<std::size_t> bootstrap_indices(std::size_t n, std::uint64_t seed) {
  if (n == 0)
    throw EmptyInput("cannot resample zero rows");
  util::Rng rng(seed);
  std::vector<std::size_t> out(n);
  for (auto &i: out)
    i = static_cast<std::size_t>(util::uniform_index(rng, n));
  return out;
}

Stacked EnsembleModel::stack(const data::EncodedSet &set) const {
  Stacked s;
  s.rows = set.size();
  s.cols = bases.size();
  s.values.resize(s.rows * s.cols);
  for (std::size_t k = 0; k < bases.size(); ++k) {
    const auto p = nn::predict_set(bases[k], set);
    for (std::size_t r = 0; r < s.rows; ++r)
      s.values[r * s.cols + k] = p[r];
  }
  return s;
}

std::vector<double> EnsembleModel::combine(const Stacked &x) const {
  std::vector<double> out(x.rows, 0.0);
  if (metas.empty())
    throw EmptyInput("ensemble has no meta-learners");
  for (std::size_t r = 0; r < x.rows; ++r) {
    const auto row = x.row(r);
    double s = 0;
    for (const auto &m: metas)
      s += m.predict(row);
    out[r] = s / static_cast<double>(metas.size());
  }
  return out;
}

json EnsembleReport::to_json() const {
  json j;
  j["property"] = property;
  j["base_reports"] = json::array();
  for (const auto &r: base_reports)
    j["base_reports"].push_back(r.to_json());
  j["final_metrics"] = json::array();
  for (const auto &m: final_metrics)
    j["final_metrics"].push_back(nn::metrics_json(m));
  j["test_predictions"] = test_predictions;
  j["test_targets"] = test_targets;
  return j;
}

EnsembleResult train_ensemble(const EnsembleConfig &config, const nn::ArtifactInfo &info,
                              const nn::TrainData &data, int threads) {
  config.validate();
  if (!data.train || data.train->size() == 0)
    throw EmptyInput("ensemble training needs a non-empty train split");
  if (!data.valid || data.valid->size() == 0)
    throw EmptyInput("ensemble stacking needs a non-empty validation split");
  if (config.base_configs[0].max_len != data.train->max_len)
    throw ConfigError({ "base max_len " + std::to_string(config.base_configs[0].max_len)
                        + " differs from the encoded max_len "
                        + std::to_string(data.train->max_len) });

  const std::size_t K = config.base_configs.size();
  std::vector<std::optional<nn::TrainResult>> results(K);
  std::vector<std::exception_ptr> errors(K);
  std::atomic<std::size_t> next{ 0 };
  auto worker = [&]() {
    for (std::size_t k = next++; k < K; k = next++) {
      try {
        results[k].emplace(nn::train(with_seed(config.base_configs[k], config.base_seed(k)),
                                     info.vocab_size, data));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(threads, 1)), 1, K));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back(worker);
    for (auto &t: pool)
      t.join();
  }
  for (const auto &e: errors)
    if (e)
      std::rethrow_exception(e);

  EnsembleResult out{ EnsembleModel{ config, info, {}, {} }, EnsembleReport{} };
  EnsembleModel &model = out.model;
  EnsembleReport &report = out.report;
  report.property = data.property;
  for (auto &r: results) {
    model.bases.push_back(std::move(r->model));
    report.base_reports.push_back(std::move(r->report));
  }

  const Stacked valid = model.stack(*data.valid);
  for (int b = 0; b < config.bagging_size; ++b) {
    const auto idx = bootstrap_indices(valid.rows, config.meta_seed(static_cast<std::size_t>(b)));
    Stacked xs;
    xs.rows = valid.rows;
    xs.cols = valid.cols;
    xs.values.reserve(valid.values.size());
    std::vector<double> ys;
    ys.reserve(idx.size());
    for (std::size_t i: idx) {
      const auto row = valid.row(i);
      xs.values.insert(xs.values.end(), row.begin(), row.end());
      ys.push_back(data.valid->targets[i]);
    }
    model.metas.push_back(config.meta_learner == MetaLearner::kMeanLinear
                              ? fit_mean_linear(xs, ys, config.ridge)
                              : fit_stump(xs, ys));
  }

  auto score = [&](const data::EncodedSet *set, const char *split, bool keep) {
    if (!set || set->size() == 0)
      return;
    const auto pred = predict_ensemble(model, *set);
    const auto truth = nn::inverse_scaled(info.scaler, data.property, set->targets);
    report.final_metrics.push_back(metrics::evaluate(data.property, split, truth, pred));
    if (keep) {
      report.test_predictions = pred;
      report.test_targets = truth;
    }
  };
  score(data.train, "train", false);
  score(data.valid, "valid", false);
  score(data.test, "test", true);
  return out;
}

std::vector<double> predict_ensemble(const EnsembleModel &model, const data::EncodedSet &set) {
  for (int id: set.ids)
    if (id < 0 || id >= model.info.vocab_size)
      throw VocabMismatch("token id " + std::to_string(id) + " is outside the model vocabulary");
  if (set.max_len > model.config.base_configs[0].max_len)
    throw ShapeMismatch("sequences longer than the model max_len");
  const auto scaled = model.combine(model.stack(set));
  return nn::inverse_scaled(model.info.scaler, model.info.property, scaled);
}

std::vector<double> predict_ensemble(const EnsembleModel &model,
                                     std::span<const data::Record> records,
                                     const Vocabulary &vocab) {
  nn::check_vocab(model.info, vocab);
  data::EncodedSet set;
  set.max_len = model.config.base_configs[0].max_len;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto e = encode(vocab, records[i].tokens(model.info.representation), set.max_len);
    set.ids.insert(set.ids.end(), e.ids.begin(), e.ids.end());
    set.lengths.push_back(e.length);
    set.targets.push_back(0.0);
    set.record_index.push_back(i);
  }
  return predict_ensemble(model, set);
}

void save_ensemble(const EnsembleModel &model, const std::string &dir) {
  const std::filesystem::path root(dir);
  json manifest;
  manifest["format"] = kManifestFormat;
  manifest["config"] = model.config.to_json();
  manifest["info"] = model.info.to_json();
  manifest["base_seeds"] = json::array();
  manifest["bases"] = json::array();
  manifest["metas"] = json::array();
  for (std::size_t k = 0; k < model.bases.size(); ++k) {
    const std::string name = "base_" + std::to_string(k) + ".bin";
    util::write_file_atomic((root / name).string(), model.bases[k].params().serialize());
    manifest["base_seeds"].push_back(model.config.base_seed(k));
    manifest["bases"].push_back(name);
  }
  for (std::size_t b = 0; b < model.metas.size(); ++b) {
    const std::string name = "meta_" + std::to_string(b) + ".json";
    util::write_file_atomic((root / name).string(), model.metas[b].to_json().dump(2) + "\n");
    manifest["metas"].push_back(name);
  }
  util::write_file_atomic((root / "manifest.json").string(), manifest.dump(2) + "\n");
}

EnsembleModel load_ensemble(const std::string &dir) {
  const std::filesystem::path root(dir);
  const json manifest = nn::read_json_file((root / "manifest.json").string());
  if (manifest.value("format", "") != kManifestFormat)
    throw FormatError("'" + dir + "' is not an ensemble directory");
  EnsembleModel model;
  try {
    model.config = EnsembleConfig::from_json(manifest.at("config"));
    model.info = nn::ArtifactInfo::from_json(manifest.at("info"));
    const auto &bases = manifest.at("bases");
    if (bases.size() != model.config.base_configs.size())
      throw FormatError("manifest lists a different number of bases than its config");
    for (std::size_t k = 0; k < bases.size(); ++k) {
      nn::Model m(with_seed(model.config.base_configs[k], model.config.base_seed(k)),
                  model.info.vocab_size);
      m.params().deserialize(util::read_file((root / bases[k].get<std::string>()).string()));
      model.bases.push_back(std::move(m));
    }
    for (const auto &name: manifest.at("metas"))
      model.metas.push_back(MetaFit::from_json(
          nn::read_json_file((root / name.get<std::string>()).string())));
  } catch (const ConfigError &e) {
    throw FormatError(std::string("bad ensemble manifest: ") + e.what());
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("bad ensemble manifest: ") + e.what());
  }
  if (model.metas.empty())
    throw FormatError("ensemble has no meta-learners");
  for (const auto &m: model.metas) {
    const bool fits = m.kind == MetaLearner::kMeanLinear
                          ? m.weights.size() == model.bases.size()
                          : m.feature >= 0 && static_cast<std::size_t>(m.feature) < model.bases.size();
    if (!fits)
      throw FormatError("meta-learner does not match the number of bases");
  }
  return model;
}

}  // namespace aisens::ensemble
