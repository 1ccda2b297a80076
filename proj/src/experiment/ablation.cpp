//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "aisens/data/csv.hpp"
#include "aisens/error.hpp"
#include "aisens/experiment/ablation.hpp"
#include "aisens/nn/artifact.hpp"
#include "aisens/nn/train.hpp"
#include "aisens/util/io.hpp"

namespace aisens::experiment {

using nlohmann::json;

std::string variant_name(const nn::ModelConfig &c) {
  switch (c.encoder) {
  case nn::Encoder::kBagOfTokens:
    return "bag";
  case nn::Encoder::kBiRecurrent:
    return "bilstm-" + std::to_string(c.num_layers) + "layer";
  case nn::Encoder::kSelfAttention:
    break;
  }
  std::string name = "attention-" + std::string(nn::to_string(c.positional));
  if (c.num_layers != 1)
    name += "-" + std::to_string(c.num_layers) + "layer";
  if (c.recurrent_head)
    name += "+bilstm";
  return name;
}

nn::ModelConfig AblationConfig::default_baseline() {
  nn::ModelConfig c;
  c.encoder = nn::Encoder::kBiRecurrent;
  c.num_layers = 1;
  return c;
}

namespace {

std::vector<std::string> check(const AblationConfig &c) {
  std::vector<std::string> problems;
  if (c.data.empty())
    problems.emplace_back("data must name a CSV file");
  if (c.property != "qed" && c.property != "logp" && c.property != "molwt")
    problems.emplace_back("property must be qed, logp or molwt");
  if (c.representations.empty())
    problems.emplace_back("representations must not be empty");
  if (c.min_count < 1)
    problems.emplace_back("min_count must be >= 1");
  try {
    c.split.validate();
  } catch (const ConfigError &e) {
    for (const auto &p: e.problems())
      problems.push_back("split." + p);
  }
  try {
    c.ensemble.validate();
  } catch (const ConfigError &e) {
    for (const auto &p: e.problems())
      problems.push_back("ensemble." + p);
  }
  try {
    c.baseline_config.validate();
  } catch (const ConfigError &e) {
    for (const auto &p: e.problems())
      problems.push_back("baseline_config." + p);
  }
  if (!c.ensemble.base_configs.empty()
      && c.baseline_config.max_len != c.ensemble.base_configs[0].max_len)
    problems.emplace_back("baseline_config.max_len must equal the ensemble max_len");
  return problems;
}

}  // namespace

void AblationConfig::validate() const {
  auto problems = check(*this);
  if (!problems.empty())
    throw ConfigError(std::move(problems));
}

json AblationConfig::to_json() const {
  json reps = json::array();
  for (auto r: representations)
    reps.push_back(std::string(data::to_string(r)));
  return { { "data", data },
           { "rows", rows },
           { "property", property },
           { "split",
             { { "train", split.train },
               { "valid", split.valid },
               { "test", split.test },
               { "seed", split.seed } } },
           { "representations", reps },
           { "ensemble", ensemble.to_json() },
           { "baseline", baseline },
           { "baseline_config", baseline_config.to_json() },
           { "min_count", min_count } };
}

AblationConfig AblationConfig::from_json(const json &j) {
  if (!j.is_object())
    throw ConfigError({ "ablation config must be a JSON object" });
  AblationConfig c;
  std::vector<std::string> problems;
  auto nested = [&](const char *prefix, auto &&parse) {
    try {
      parse();
    } catch (const ConfigError &e) {
      for (const auto &p: e.problems())
        problems.push_back(std::string(prefix) + p);
    }
  };
  for (const auto &[key, v]: j.items()) {
    if (key == "data") {
      if (v.is_string())
        c.data = v.get<std::string>();
      else
        problems.emplace_back("data must be a string");
    } else if (key == "rows") {
      if (v.is_number_unsigned())
        c.rows = v.get<std::size_t>();
      else
        problems.emplace_back("rows must be a non-negative integer");
    } else if (key == "property") {
      if (v.is_string())
        c.property = v.get<std::string>();
      else
        problems.emplace_back("property must be a string");
    } else if (key == "split") {
      if (!v.is_object()) {
        problems.emplace_back("split must be an object");
        continue;
      }
      for (const auto &[sk, sv]: v.items()) {
        if (sk == "seed") {
          if (sv.is_number_unsigned())
            c.split.seed = sv.get<std::uint64_t>();
          else
            problems.emplace_back("split.seed must be a non-negative integer");
        } else if (sk == "train" || sk == "valid" || sk == "test") {
          if (!sv.is_number()) {
            problems.push_back("split." + sk + " must be a number");
            continue;
          }
          double &slot = sk == "train" ? c.split.train : sk == "valid" ? c.split.valid : c.split.test;
          slot = sv.get<double>();
        } else {
          problems.push_back("unknown key 'split." + sk + "'");
        }
      }
    } else if (key == "representations") {
      if (!v.is_array()) {
        problems.emplace_back("representations must be an array");
        continue;
      }
      c.representations.clear();
      for (const auto &r: v) {
        if (!r.is_string()) {
          problems.emplace_back("representations entries must be strings");
          continue;
        }
        nested("", [&] { c.representations.push_back(data::parse_representation(r.get<std::string>())); });
      }
    } else if (key == "ensemble") {
      nested("ensemble.", [&] { c.ensemble = ensemble::EnsembleConfig::from_json(v); });
    } else if (key == "baseline") {
      if (v.is_boolean())
        c.baseline = v.get<bool>();
      else
        problems.emplace_back("baseline must be a boolean");
    } else if (key == "baseline_config") {
      nested("baseline_config.", [&] { c.baseline_config = nn::ModelConfig::from_json(v); });
    } else if (key == "min_count") {
      if (v.is_number_integer())
        c.min_count = v.get<int>();
      else
        problems.emplace_back("min_count must be an integer");
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

std::string AblationResult::to_csv() const {
  std::string out = "model,representation,split,mae,rmse,r2\n";
  for (const auto &r: rows)
    out += data::csv_line({ r.model, std::string(data::to_string(r.representation)),
                            r.metrics.split, util::format_double(r.metrics.mae),
                            util::format_double(r.metrics.rmse),
                            util::format_double(r.metrics.r2) });
  return out;
}

double AblationResult::ensemble_test_mae(data::Representation rep) const {
  for (const auto &r: rows)
    if (r.model == "ensemble" && r.representation == rep && r.metrics.split == "test")
      return r.metrics.mae;
  return std::numeric_limits<double>::quiet_NaN();
}

AblationResult run_ablation(const AblationConfig &config, std::vector<data::Record> records,
                            int threads, std::ostream *log) {
  config.validate();
  data::assign_splits(records, config.split);
  const auto scaler = data::TargetScaler::fit(records, data::default_scaled_properties());
  const int max_len = config.ensemble.base_configs[0].max_len;

  std::vector<std::string> names;
  for (const auto &b: config.ensemble.base_configs) {
    std::string name = variant_name(b);
    if (std::find(names.begin(), names.end(), name) != names.end())
      name += "#" + std::to_string(names.size());
    names.push_back(std::move(name));
  }

  AblationResult result;
  for (const auto rep: config.representations) {
    const std::string rep_name(data::to_string(rep));
    std::vector<TokenSeq> corpus;
    corpus.reserve(records.size());
    for (const auto &r: records)
      corpus.push_back(r.tokens(rep));
    const Vocabulary vocab = build_vocab(corpus, config.min_count, threads);
    result.vocab_hash[rep_name] = vocab.hash();
    result.vocab_size[rep_name] = vocab.size_without_specials();

    const auto train = data::encode_split(records, data::Split::kTrain, vocab, rep,
                                          config.property, scaler, max_len);
    const auto valid = data::encode_split(records, data::Split::kValid, vocab, rep,
                                          config.property, scaler, max_len);
    const auto test = data::encode_split(records, data::Split::kTest, vocab, rep,
                                         config.property, scaler, max_len);
    const nn::TrainData td{ &train, &valid, &test, config.property, scaler };
    const nn::ArtifactInfo info{ config.property, rep, vocab.hash(), vocab.size(), scaler };

    if (log)
      *log << "[" << rep_name << "] vocabulary " << vocab.size_without_specials()
           << " tokens, training " << names.size() << " bases" << std::endl;
    const auto ens = ensemble::train_ensemble(config.ensemble, info, td, threads);
    for (std::size_t k = 0; k < names.size(); ++k)
      for (const auto &m: ens.report.base_reports[k].final_metrics)
        result.rows.push_back({ names[k], rep, m });
    if (config.baseline) {
      if (log)
        *log << "[" << rep_name << "] training baseline" << std::endl;
      nn::ModelConfig bc = config.baseline_config;
      bc.seed = config.ensemble.base_seed(config.ensemble.base_configs.size());
      const auto base = nn::train(bc, vocab.size(), td);
      for (const auto &m: base.report.final_metrics)
        result.rows.push_back({ "baseline-" + variant_name(bc), rep, m });
    }
    for (const auto &m: ens.report.final_metrics)
      result.rows.push_back({ "ensemble", rep, m });
    if (log)
      *log << "[" << rep_name << "] ensemble test MAE "
           << util::format_double(result.ensemble_test_mae(rep)) << std::endl;
  }
  return result;
}

}  // namespace aisens::experiment
