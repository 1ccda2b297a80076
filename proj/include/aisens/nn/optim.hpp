//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_NN_OPTIM_HPP_
#define AISENS_NN_OPTIM_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "aisens/nn/params.hpp"

namespace aisens::nn {

struct LossResult {
  double loss = 0;
  /// d(loss)/d(pred).
  std::vector<double> grad;
};

/// Mean absolute error, with subgradient 0 at exact ties. Throws
/// EmptyBatch and LengthMismatch.
LossResult mae_loss(std::span<const double> pred, std::span<const double> target);

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

class Adam {
public:
  explicit Adam(AdamOptions opts = {}): opts_(opts) { }

  /// Updates every parameter from its gradient slot. Throws
  /// NonFiniteGradient before touching anything if a gradient is not
  /// finite.
  void step(ParameterStore &ps);

  std::int64_t steps() const noexcept { return t_; }
  const AdamOptions &options() const noexcept { return opts_; }

private:
  AdamOptions opts_;
  std::int64_t t_ = 0;
};

/// Scales all gradients so their global norm is at most max_norm.
/// Returns the norm before clipping.
double clip_grad_norm(ParameterStore &ps, double max_norm);

}  // namespace aisens::nn

#endif  // AISENS_NN_OPTIM_HPP_
