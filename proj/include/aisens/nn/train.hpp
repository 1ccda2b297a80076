//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_NN_TRAIN_HPP_
#define AISENS_NN_TRAIN_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aisens/data/dataset.hpp"
#include "aisens/metrics/metrics.hpp"
#include "aisens/nn/model.hpp"

namespace aisens::nn {

struct EpochRecord {
  int epoch = 0;
  /// Mean training loss over the epoch, in scaled units.
  double train_loss = 0;
  /// Validation metrics in original units; NaN when there is no
  /// validation split.
  double valid_mae = 0;
  double valid_rmse = 0;
  double valid_r2 = 0;
};

struct TrainReport {
  std::string property;
  ModelConfig config;
  std::vector<EpochRecord> epochs;
  /// 1-based epoch whose parameters were kept; 0 for the initial ones.
  int best_epoch = 0;
  /// Metrics of the kept parameters, original units, one per non-empty
  /// split in train, valid, test order.
  std::vector<metrics::MetricsReport> final_metrics;
  std::vector<double> test_predictions;
  std::vector<double> test_targets;

  nlohmann::json to_json() const;
};

/// Splits to train on, already encoded for one property.
struct TrainData {
  const data::EncodedSet *train = nullptr;
  const data::EncodedSet *valid = nullptr;
  const data::EncodedSet *test = nullptr;
  std::string property;
  data::TargetScaler scaler;
};

struct TrainResult {
  Model model;
  TrainReport report;
};

/// Runs config.epochs epochs of Adam on the MAE loss and keeps the
/// parameters of the epoch with the lowest validation MAE. The head bias
/// starts at the median training target. Throws EmptyInput for an empty
/// train split, DivergedError when the training loss is not finite.
TrainResult train(const ModelConfig &config, int vocab_size, const TrainData &data);

/// Eval-mode predictions for every row of `set`, in scaled units.
/// {split, n, mae, rmse, r2}; non-finite values become null.
nlohmann::json metrics_json(const metrics::MetricsReport &m);

std::vector<double> predict_set(const Model &model, const data::EncodedSet &set,
                                int batch_size = 64);

/// Scaled predictions mapped back to original units.
std::vector<double> inverse_scaled(const data::TargetScaler &scaler,
                                   const std::string &property,
                                   std::span<const double> scaled);

}  // namespace aisens::nn

#endif  // AISENS_NN_TRAIN_HPP_
