//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_TESTS_GRADCHECK_HPP_
#define AISENS_TESTS_GRADCHECK_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "aisens/nn/model.hpp"

namespace aisens::test {

struct GroupError {
  std::string name;
  /// ||analytic - numeric|| / (||analytic|| + ||numeric||).
  double rel_error = 0;
  double analytic_norm = 0;
  double numeric_norm = 0;

  bool ok(double rel_tol, double abs_tol = 1e-8) const {
    return rel_error < rel_tol || (analytic_norm < abs_tol && numeric_norm < abs_tol);
  }
};

struct TinyBatch {
  std::vector<int> ids;
  std::vector<int> lengths;
  int stride = 0;
  std::vector<double> weights;  // loss = sum_i weights[i] * pred[i]

  nn::InputView view() const { return { ids, lengths, stride }; }
};

inline TinyBatch tiny_batch(std::uint64_t seed, int rows, int stride, int vocab) {
  util::Rng rng(seed);
  TinyBatch b;
  b.stride = stride;
  for (int r = 0; r < rows; ++r) {
    const int len = 2 + static_cast<int>(util::uniform_index(rng, static_cast<std::uint64_t>(stride - 1)));
    b.lengths.push_back(len);
    for (int t = 0; t < stride; ++t)
      b.ids.push_back(t < len ? static_cast<int>(util::uniform_index(rng, static_cast<std::uint64_t>(vocab))) : 0);
    b.weights.push_back(util::uniform(rng, -1.0, 1.0));
  }
  return b;
}

/// Central differences (f(x+eps) - f(x-eps)) / 2eps of a linear functional
/// of the predictions, against backward(). Dropout masks are held fixed by
/// reseeding the generator for every forward pass.
inline std::vector<GroupError> gradient_check(nn::Model &model, const TinyBatch &b,
                                              double eps = 1e-5) {
  auto loss = [&]() {
    util::Rng rng(4242);
    const auto p = model.forward(b.view(), nn::Mode::kTrain, &rng);
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      s += b.weights[i] * p[i];
    return s;
  };
  auto &ps = model.params();
  ps.zero_grad();
  {
    util::Rng rng(4242);
    nn::ForwardCache cache;
    model.forward(b.view(), nn::Mode::kTrain, &rng, &cache);
    model.backward(cache, b.weights);
  }
  std::vector<GroupError> out;
  for (int i = 0; i < ps.size(); ++i) {
    const nn::Mat analytic = ps[i].grad;
    nn::Mat numeric(analytic.rows(), analytic.cols());
    for (Eigen::Index k = 0; k < analytic.size(); ++k) {
      double &x = ps.mutate(i).value.data()[k];
      const double orig = x;
      x = orig + eps;
      const double fp = loss();
      ps.mutate(i).value.data()[k] = orig - eps;
      const double fm = loss();
      ps.mutate(i).value.data()[k] = orig;
      numeric.data()[k] = (fp - fm) / (2 * eps);
    }
    const double denom = analytic.norm() + numeric.norm();
    out.push_back({ ps[i].name, denom > 0 ? (analytic - numeric).norm() / denom : 0.0,
                    analytic.norm(), numeric.norm() });
  }
  return out;
}

}  // namespace aisens::test

#endif  // AISENS_TESTS_GRADCHECK_HPP_
