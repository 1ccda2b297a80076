//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_EXPERIMENT_ABLATION_HPP_
#define AISENS_EXPERIMENT_ABLATION_HPP_

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aisens/data/dataset.hpp"
#include "aisens/ensemble/ensemble.hpp"
#include "aisens/metrics/metrics.hpp"
#include "aisens/nn/config.hpp"

namespace aisens::experiment {

/// Short name of a base variant, e.g. "attention-learned+bilstm".
std::string variant_name(const nn::ModelConfig &c);

struct AblationConfig {
  /// CSV with smiles, qed, logP, MolWt columns.
  std::string data;
  /// Leading data rows to use; 0 means all.
  std::size_t rows = 5000;
  std::string property = "qed";
  data::SplitSpec split;
  std::vector<data::Representation> representations = { data::Representation::kAis,
                                                         data::Representation::kSmiles };
  ensemble::EnsembleConfig ensemble;
  /// Standalone recurrent model trained next to the ensemble.
  bool baseline = true;
  nn::ModelConfig baseline_config = default_baseline();
  int min_count = 1;

  static nn::ModelConfig default_baseline();

  /// Throws ConfigError listing every problem.
  void validate() const;
  nlohmann::json to_json() const;
  static AblationConfig from_json(const nlohmann::json &j);
};

struct AblationRow {
  std::string model;
  data::Representation representation = data::Representation::kAis;
  metrics::MetricsReport metrics;
};

struct AblationResult {
  std::vector<AblationRow> rows;
  /// Per representation.
  std::map<std::string, std::string> vocab_hash;
  std::map<std::string, int> vocab_size;

  /// model,representation,split,mae,rmse,r2
  std::string to_csv() const;
  /// Ensemble test MAE for one representation; NaN when absent.
  double ensemble_test_mae(data::Representation r) const;
};

/// Runs {each base variant, the baseline, the ensemble} x representations on
/// `records` (already tokenized; splits are reassigned from config.split).
/// Progress lines go to `log` when given.
AblationResult run_ablation(const AblationConfig &config, std::vector<data::Record> records,
                            int threads = 1, std::ostream *log = nullptr);

}  // namespace aisens::experiment

#endif  // AISENS_EXPERIMENT_ABLATION_HPP_
