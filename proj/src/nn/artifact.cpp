//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <filesystem>
#include <string>

#include "aisens/error.hpp"
#include "aisens/nn/artifact.hpp"
#include "aisens/util/io.hpp"

namespace aisens::nn {

using nlohmann::json;

json scaler_to_json(const data::TargetScaler &s) {
  json j = json::object();
  for (const auto &[name, st]: s.all())
    j[name] = { { "mean", st.mean }, { "stddev", st.stddev }, { "enabled", st.enabled } };
  return j;
}

data::TargetScaler scaler_from_json(const json &j) {
  if (!j.is_object())
    throw FormatError("scaler must be an object");
  data::TargetScaler s;
  try {
    for (const auto &[name, v]: j.items())
      s.set(name, { v.at("mean").get<double>(), v.at("stddev").get<double>(),
                    v.at("enabled").get<bool>() });
  } catch (const json::exception &e) {
    throw FormatError(std::string("bad scaler entry: ") + e.what());
  }
  return s;
}

json ArtifactInfo::to_json() const {
  return { { "property", property },
           { "representation", std::string(data::to_string(representation)) },
           { "vocab_hash", vocab_hash },
           { "vocab_size", vocab_size },
           { "scaler", scaler_to_json(scaler) } };
}

ArtifactInfo ArtifactInfo::from_json(const json &j) {
  ArtifactInfo info;
  try {
    info.property = j.at("property").get<std::string>();
    info.representation = data::parse_representation(j.at("representation").get<std::string>());
    info.vocab_hash = j.at("vocab_hash").get<std::string>();
    info.vocab_size = j.at("vocab_size").get<int>();
    info.scaler = scaler_from_json(j.at("scaler"));
  } catch (const json::exception &e) {
    throw FormatError(std::string("bad model metadata: ") + e.what());
  } catch (const ConfigError &e) {
    throw FormatError(std::string("bad model metadata: ") + e.what());
  }
  return info;
}

void check_vocab(const ArtifactInfo &info, const Vocabulary &vocab) {
  if (vocab.hash() != info.vocab_hash || vocab.size() != info.vocab_size)
    throw VocabMismatch("vocabulary " + vocab.hash() + " does not match the model's "
                        + info.vocab_hash);
}

json read_json_file(const std::string &path) {
  const std::string text = util::read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void save_model_dir(const std::string &dir, const Model &model, const ArtifactInfo &info) {
  const std::filesystem::path root(dir);
  json j = { { "config", model.config().to_json() }, { "info", info.to_json() } };
  util::write_file_atomic((root / "model.json").string(), j.dump(2) + "\n");
  util::write_file_atomic((root / "params.bin").string(), model.params().serialize());
}

LoadedModel load_model_dir(const std::string &dir) {
  const std::filesystem::path root(dir);
  const json j = read_json_file((root / "model.json").string());
  if (!j.contains("config") || !j.contains("info"))
    throw FormatError("model.json lacks config or info");
  ArtifactInfo info = ArtifactInfo::from_json(j["info"]);
  Model model(ModelConfig::from_json(j["config"]), info.vocab_size);
  model.params().deserialize(util::read_file((root / "params.bin").string()));
  return { std::move(model), std::move(info) };
}

}  // namespace aisens::nn
