//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_ENSEMBLE_ENSEMBLE_HPP_
#define AISENS_ENSEMBLE_ENSEMBLE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aisens/data/dataset.hpp"
#include "aisens/metrics/metrics.hpp"
#include "aisens/nn/artifact.hpp"
#include "aisens/nn/model.hpp"
#include "aisens/nn/train.hpp"
#include "aisens/util/random.hpp"

namespace aisens::ensemble {

enum class MetaLearner : std::uint8_t { kMeanLinear, kRegressionStump };

std::string_view to_string(MetaLearner m) noexcept;

struct EnsembleConfig {
  /// One per base predictor. Each base is trained with the seed
  /// derive_seed(seed, k), not the seed in its own config.
  std::vector<nn::ModelConfig> base_configs = default_bases();
  int bagging_size = 10;
  MetaLearner meta_learner = MetaLearner::kMeanLinear;
  /// MeanLinear shrinkage toward equal weights, relative to the average
  /// feature variance.
  double ridge = 0.1;
  /// Only "ValidationHoldout": bases fit Train, meta-learners fit the
  /// bases' Valid predictions.
  std::string stacking_source = "ValidationHoldout";
  std::uint64_t seed = 7;

  /// Attention with sinusoidal positions, attention with learned
  /// positions, and a two-layer BiLSTM.
  static std::vector<nn::ModelConfig> default_bases();

  std::uint64_t base_seed(std::size_t k) const { return util::derive_seed(seed, k); }
  std::uint64_t meta_seed(std::size_t b) const;

  /// Throws ConfigError listing every problem.
  void validate() const;

  nlohmann::json to_json() const;
  /// Like ModelConfig::from_json; problems inside a base config are
  /// reported with a "base_configs[k]." prefix.
  static EnsembleConfig from_json(const nlohmann::json &j);

  bool operator==(const EnsembleConfig &) const = default;
};

/// One bagged meta-learner over the K stacked base predictions.
struct MetaFit {
  MetaLearner kind = MetaLearner::kMeanLinear;
  // MeanLinear: bias + weights . x
  std::vector<double> weights;
  double bias = 0;
  // RegressionStump: x[feature] <= threshold ? left : right
  int feature = 0;
  double threshold = 0;
  double left = 0;
  double right = 0;

  double predict(std::span<const double> x) const;

  nlohmann::json to_json() const;
  static MetaFit from_json(const nlohmann::json &j);

  bool operator==(const MetaFit &) const = default;
};

/// Row-major n x K matrix of base predictions.
struct Stacked {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t r) const {
    return { values.data() + r * cols, cols };
  }
};

/// Least squares with an unpenalized bias and a ridge pull of the weights
/// toward 1/K. Throws EmptyInput.
MetaFit fit_mean_linear(const Stacked &x, std::span<const double> y, double ridge);
/// Best single threshold on any feature by squared error; a constant when
/// no split separates the rows. Throws EmptyInput.
MetaFit fit_stump(const Stacked &x, std::span<const double> y);

/// n indices drawn uniformly with replacement from [0, n), fixed by seed.
/// Throws EmptyInput when n == 0.
std::vector<std::size_t> bootstrap_indices(std::size_t n, std::uint64_t seed);

template<typename T>
std::vector<T> bootstrap_resample(std::span<const T> rows, std::uint64_t seed) {
  std::vector<T> out;
  out.reserve(rows.size());
  for (std::size_t i: bootstrap_indices(rows.size(), seed))
    out.push_back(rows[i]);
  return out;
}

struct EnsembleModel {
  EnsembleConfig config;
  nn::ArtifactInfo info;
  std::vector<nn::Model> bases;
  std::vector<MetaFit> metas;

  /// Base predictions in scaled units.
  Stacked stack(const data::EncodedSet &set) const;
  /// Mean over the meta-learners, scaled units.
  std::vector<double> combine(const Stacked &x) const;
};

struct EnsembleReport {
  std::string property;
  std::vector<nn::TrainReport> base_reports;
  /// Ensemble metrics in original units for valid and test (when present).
  std::vector<metrics::MetricsReport> final_metrics;
  std::vector<double> test_predictions;
  std::vector<double> test_targets;

  nlohmann::json to_json() const;
};

struct EnsembleResult {
  EnsembleModel model;
  EnsembleReport report;
};

/// Trains the bases on Train, stacks their Valid predictions and fits
/// bagging_size meta-learners on bootstrap resamples of those rows. Test
/// rows are only predicted. Results do not depend on `threads`.
/// Throws EmptyInput when Train or Valid is missing or empty.
EnsembleResult train_ensemble(const EnsembleConfig &config, const nn::ArtifactInfo &info,
                              const nn::TrainData &data, int threads = 1);

/// Predictions in original units. Throws VocabMismatch when the set
/// references ids the bases do not know.
std::vector<double> predict_ensemble(const EnsembleModel &model, const data::EncodedSet &set);

/// Encodes `records` with `vocab` first. Throws VocabMismatch when the
/// vocabulary differs from the one used for training.
std::vector<double> predict_ensemble(const EnsembleModel &model,
                                     std::span<const data::Record> records,
                                     const Vocabulary &vocab);

/// Directory layout: manifest.json, base_<k>.bin, meta_<b>.json.
void save_ensemble(const EnsembleModel &model, const std::string &dir);
/// Throws IoError, FormatError, ShapeMismatch.
EnsembleModel load_ensemble(const std::string &dir);

}  // namespace aisens::ensemble

#endif  // AISENS_ENSEMBLE_ENSEMBLE_HPP_
