//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_NN_MODEL_HPP_
#define AISENS_NN_MODEL_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "aisens/nn/config.hpp"
#include "aisens/nn/params.hpp"
#include "aisens/util/random.hpp"

namespace aisens::nn {

enum class Mode : std::uint8_t { kEval, kTrain };

/// Id matrix (row-major, rows x stride) with the true length of each row.
struct InputView {
  std::span<const int> ids;
  std::span<const int> lengths;
  int stride = 0;

  int rows() const noexcept { return static_cast<int>(lengths.size()); }
};

/// Activations kept by a training-mode forward pass for backward.
class ForwardCache {
public:
  ForwardCache();
  ~ForwardCache();
  ForwardCache(ForwardCache &&) noexcept;
  ForwardCache &operator=(ForwardCache &&) noexcept;

  struct Impl;
  Impl &impl() { return *impl_; }
  const Impl &impl() const { return *impl_; }

private:
  std::unique_ptr<Impl> impl_;
};

/// Sequence regressor: token embedding, encoder, pooling, linear head.
/// Only the first `length` positions of a row are read, so padding never
/// influences a prediction.
class Model {
public:
  /// Initializes parameters from config.seed. Throws ConfigError.
  Model(const ModelConfig &config, int vocab_size);

  const ModelConfig &config() const noexcept { return config_; }
  int vocab_size() const noexcept { return vocab_size_; }
  ParameterStore &params() noexcept { return params_; }
  const ParameterStore &params() const noexcept { return params_; }

  /// One prediction per row. Training mode applies dropout drawn from
  /// `rng` and, when `cache` is given, records what backward needs.
  /// Throws ShapeMismatch for malformed input.
  std::vector<double> forward(const InputView &in, Mode mode,
                              util::Rng *rng = nullptr,
                              ForwardCache *cache = nullptr) const;

  std::vector<double> predict(const InputView &in) const {
    return forward(in, Mode::kEval);
  }

  /// Adds d(loss)/d(param) to the gradient slots given d(loss)/d(pred).
  /// Throws StaleCache when parameters changed since the forward pass or
  /// the cache holds no activations, ShapeMismatch on a size mismatch.
  void backward(const ForwardCache &cache, std::span<const double> dpred);

  /// Encoder output (hidden x length) before pooling, eval mode. For
  /// bidirectional recurrence the first hidden/2 rows are the forward
  /// direction.
  Mat token_states(std::span<const int> ids) const;

  /// Width of the pooled vector fed to the head.
  int feature_size() const noexcept;

private:
  struct Index;

  ModelConfig config_;
  int vocab_size_;
  ParameterStore params_;
  std::shared_ptr<const Index> index_;
  Mat sinusoid_;
};

}  // namespace aisens::nn

#endif  // AISENS_NN_MODEL_HPP_
