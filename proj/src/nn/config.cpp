//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/nn/config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "aisens/error.hpp"

namespace aisens::nn {

using nlohmann::json;

std::string_view to_string(Encoder e) noexcept {
  switch (e) {
  case Encoder::kBiRecurrent: return "BiRecurrent";
  case Encoder::kSelfAttention: return "SelfAttention";
  case Encoder::kBagOfTokens: return "BagOfTokens";
  }
  return "?";
}

std::string_view to_string(Positional p) noexcept {
  return p == Positional::kSinusoidal ? "sinusoidal" : "learned";
}

std::string_view to_string(Pooling p) noexcept {
  return p == Pooling::kMean ? "mean" : "first";
}

namespace {

std::vector<std::string> check(const ModelConfig &c) {
  std::vector<std::string> p;
  if (!(c.learning_rate > 0.0) || !std::isfinite(c.learning_rate))
    p.emplace_back("learning_rate must be > 0");
  if (c.batch_size < 1)
    p.emplace_back("batch_size must be >= 1");
  if (!(c.dropout >= 0.0 && c.dropout < 1.0))
    p.emplace_back("dropout must lie in [0,1)");
  if (c.hidden_size < 1)
    p.emplace_back("hidden_size must be >= 1");
  if (c.attention_heads < 1)
    p.emplace_back("attention_heads must be >= 1");
  if (c.epochs < 0)
    p.emplace_back("epochs must be >= 0");
  if (c.loss != "MAE")
    p.emplace_back("loss must be \"MAE\"");
  if (c.max_len < 2)
    p.emplace_back("max_len must be >= 2");
  if (c.embed_dim < 1)
    p.emplace_back("embed_dim must be >= 1");
  if (c.num_layers < 1)
    p.emplace_back("num_layers must be >= 1");
  if (!(c.grad_clip >= 0.0))
    p.emplace_back("grad_clip must be >= 0");
  const bool bilstm = c.encoder == Encoder::kBiRecurrent
                   || (c.encoder == Encoder::kSelfAttention && c.recurrent_head);
  if (bilstm && c.hidden_size % 2 != 0)
    p.emplace_back("hidden_size must be even for bidirectional recurrence");
  if (c.encoder == Encoder::kSelfAttention && c.attention_heads >= 1
      && c.hidden_size % c.attention_heads != 0)
    p.emplace_back("hidden_size must be divisible by attention_heads");
  return p;
}

template <class E>
bool parse_enum(std::string_view s, std::initializer_list<E> values, E &out) {
  for (const E v: values)
    if (to_string(v) == s) {
      out = v;
      return true;
    }
  return false;
}

}  // namespace

void ModelConfig::validate() const {
  auto problems = check(*this);
  if (!problems.empty())
    throw ConfigError(std::move(problems));
}

json ModelConfig::to_json() const {
  return json{
    { "learning_rate", learning_rate },
    { "batch_size", batch_size },
    { "dropout", dropout },
    { "hidden_size", hidden_size },
    { "attention_heads", attention_heads },
    { "epochs", epochs },
    { "loss", loss },
    { "max_len", max_len },
    { "embed_dim", embed_dim },
    { "encoder", std::string(to_string(encoder)) },
    { "num_layers", num_layers },
    { "seed", seed },
    { "positional", std::string(to_string(positional)) },
    { "recurrent_head", recurrent_head },
    { "pooling", std::string(to_string(pooling)) },
    { "grad_clip", grad_clip },
  };
}

ModelConfig ModelConfig::from_json(const json &j) {
  ModelConfig c;
  std::vector<std::string> problems;
  if (!j.is_object())
    throw ConfigError({ "model config must be a JSON object" });

  auto real = [&](const char *key, double &dst) {
    return [&, key](const json &v) {
      if (!v.is_number())
        problems.push_back(std::string(key) + " must be a number");
      else
        dst = v.get<double>();
    };
  };
  auto integer = [&](const char *key, int &dst) {
    return [&, key](const json &v) {
      if (!v.is_number_integer())
        problems.push_back(std::string(key) + " must be an integer");
      else
        dst = v.get<int>();
    };
  };
  auto text = [&](const char *key, auto parse) {
    return [&, key, parse](const json &v) {
      if (!v.is_string() || !parse(v.get<std::string>()))
        problems.push_back(std::string(key) + " has an invalid value");
    };
  };

  const std::map<std::string, std::function<void(const json &)>> fields = {
    { "learning_rate", real("learning_rate", c.learning_rate) },
    { "batch_size", integer("batch_size", c.batch_size) },
    { "dropout", real("dropout", c.dropout) },
    { "hidden_size", integer("hidden_size", c.hidden_size) },
    { "attention_heads", integer("attention_heads", c.attention_heads) },
    { "epochs", integer("epochs", c.epochs) },
    { "loss", text("loss", [&](const std::string &s) { c.loss = s; return true; }) },
    { "max_len", integer("max_len", c.max_len) },
    { "embed_dim", integer("embed_dim", c.embed_dim) },
    { "encoder", text("encoder", [&](const std::string &s) {
        return parse_enum(s, { Encoder::kBiRecurrent, Encoder::kSelfAttention,
                               Encoder::kBagOfTokens }, c.encoder);
      }) },
    { "num_layers", integer("num_layers", c.num_layers) },
    { "seed", [&](const json &v) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
          problems.emplace_back("seed must be a non-negative integer");
        else
          c.seed = v.get<std::uint64_t>();
      } },
    { "positional", text("positional", [&](const std::string &s) {
        return parse_enum(s, { Positional::kSinusoidal, Positional::kLearned },
                          c.positional);
      }) },
    { "recurrent_head", [&](const json &v) {
        if (!v.is_boolean())
          problems.emplace_back("recurrent_head must be a boolean");
        else
          c.recurrent_head = v.get<bool>();
      } },
    { "pooling", text("pooling", [&](const std::string &s) {
        return parse_enum(s, { Pooling::kMean, Pooling::kFirst }, c.pooling);
      }) },
    { "grad_clip", real("grad_clip", c.grad_clip) },
  };

  for (const auto &[key, value]: j.items()) {
    const auto it = fields.find(key);
    if (it == fields.end())
      problems.push_back("unknown key '" + key + "'");
    else
      it->second(value);
  }
  for (auto &p: check(c))
    problems.push_back(std::move(p));
  if (!problems.empty())
    throw ConfigError(std::move(problems));
  return c;
}

}  // namespace aisens::nn
