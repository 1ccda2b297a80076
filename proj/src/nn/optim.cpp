//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/nn/optim.hpp"

#include <cmath>

#include "aisens/error.hpp"

namespace aisens::nn {

LossResult mae_loss(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size())
    throw LengthMismatch("prediction and target sizes differ");
  if (pred.empty())
    throw EmptyBatch("loss over an empty batch");
  const double n = static_cast<double>(pred.size());
  LossResult r;
  r.grad.resize(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    r.loss += std::abs(d);
    r.grad[i] = d > 0 ? 1.0 / n : (d < 0 ? -1.0 / n : 0.0);
  }
  r.loss /= n;
  return r;
}

void Adam::step(ParameterStore &ps) {
  if (!ps.grads_finite())
    throw NonFiniteGradient("gradient contains NaN or infinity");
  ++t_;
  const double c1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(t_));
  for (int i = 0; i < ps.size(); ++i) {
    auto &p = ps.mutate(i);
    p.m = opts_.beta1 * p.m + (1.0 - opts_.beta1) * p.grad;
    p.v = opts_.beta2 * p.v + (1.0 - opts_.beta2) * p.grad.cwiseAbs2();
    p.value.array() -= opts_.learning_rate * (p.m.array() / c1)
                     / ((p.v.array() / c2).sqrt() + opts_.eps);
  }
}

double clip_grad_norm(ParameterStore &ps, double max_norm) {
  const double norm = ps.grad_norm();
  if (max_norm > 0.0 && norm > max_norm) {
    const double s = max_norm / norm;
    for (int i = 0; i < ps.size(); ++i)
      ps.grad(i) *= s;
  }
  return norm;
}

}  // namespace aisens::nn
