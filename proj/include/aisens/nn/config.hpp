//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_NN_CONFIG_HPP_
#define AISENS_NN_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace aisens::nn {

enum class Encoder : std::uint8_t { kBiRecurrent, kSelfAttention, kBagOfTokens };
enum class Positional : std::uint8_t { kSinusoidal, kLearned };
enum class Pooling : std::uint8_t { kMean, kFirst };

std::string_view to_string(Encoder e) noexcept;
std::string_view to_string(Positional p) noexcept;
std::string_view to_string(Pooling p) noexcept;

struct ModelConfig {
  double learning_rate = 1e-3;
  int batch_size = 16;
  double dropout = 0.1;
  int hidden_size = 64;
  int attention_heads = 4;
  int epochs = 10;
  /// Only "MAE".
  std::string loss = "MAE";
  int max_len = 128;
  int embed_dim = 32;
  Encoder encoder = Encoder::kSelfAttention;
  int num_layers = 1;
  std::uint64_t seed = 7;
  // SelfAttention only.
  Positional positional = Positional::kSinusoidal;
  /// BiLSTM over the attention outputs before pooling.
  bool recurrent_head = true;
  /// Ignored by BagOfTokens, which always sums.
  Pooling pooling = Pooling::kMean;
  /// Global gradient-norm limit; 0 disables clipping.
  double grad_clip = 0.0;

  /// Feed-forward width inside attention blocks.
  int ffn_size() const noexcept { return 2 * hidden_size; }

  /// Throws ConfigError listing every problem.
  void validate() const;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults; unknown keys, wrong types and
  /// invalid values are all reported together in one ConfigError.
  static ModelConfig from_json(const nlohmann::json &j);

  bool operator==(const ModelConfig &) const = default;
};

}  // namespace aisens::nn

#endif  // AISENS_NN_CONFIG_HPP_
