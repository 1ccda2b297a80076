//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_NN_ARTIFACT_HPP_
#define AISENS_NN_ARTIFACT_HPP_

#include <string>

#include <json.hpp>

#include "aisens/data/dataset.hpp"
#include "aisens/nn/model.hpp"

namespace aisens::nn {

/// What a trained model needs besides its parameters to be applied to new
/// records.
struct ArtifactInfo {
  std::string property;
  data::Representation representation = data::Representation::kAis;
  std::string vocab_hash;
  int vocab_size = 0;
  data::TargetScaler scaler;

  nlohmann::json to_json() const;
  /// Throws FormatError.
  static ArtifactInfo from_json(const nlohmann::json &j);

  bool operator==(const ArtifactInfo &) const = default;
};

nlohmann::json scaler_to_json(const data::TargetScaler &s);
data::TargetScaler scaler_from_json(const nlohmann::json &j);

/// Throws VocabMismatch when `vocab` is not the training vocabulary.
void check_vocab(const ArtifactInfo &info, const Vocabulary &vocab);

struct LoadedModel {
  Model model;
  ArtifactInfo info;
};

/// Directory layout: model.json (config and info), params.bin.
void save_model_dir(const std::string &dir, const Model &model, const ArtifactInfo &info);
/// Throws IoError, FormatError, ShapeMismatch, ConfigError.
LoadedModel load_model_dir(const std::string &dir);

/// Parses a JSON file. Throws IoError, FormatError.
nlohmann::json read_json_file(const std::string &path);

}  // namespace aisens::nn

#endif  // AISENS_NN_ARTIFACT_HPP_
