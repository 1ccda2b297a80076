//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_METRICS_METRICS_HPP_
#define AISENS_METRICS_METRICS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace aisens::metrics {

// All three throw LengthMismatch when the sizes differ and EmptyInput when
// they are zero. Sums over more than 4096 terms are pairwise.

/// Mean absolute error.
double mae(std::span<const double> y, std::span<const double> y_hat);
/// Root mean squared error.
double rmse(std::span<const double> y, std::span<const double> y_hat);
/// Coefficient of determination, 1 - SSres/SStot. Throws ZeroVariance when
/// all y are equal.
double r2(std::span<const double> y, std::span<const double> y_hat);

/// Sum with pairwise splitting above 4096 terms.
double robust_sum(std::span<const double> v);

struct MetricsReport {
  std::string property;
  std::string split;
  std::size_t n = 0;
  double mae = 0;
  double rmse = 0;
  double r2 = 0;
};

/// r2 is NaN when y has zero variance.
MetricsReport evaluate(const std::string &property, const std::string &split,
                       std::span<const double> y, std::span<const double> y_hat);

/// Header plus one `property,split,n,mae,rmse,r2` row per report.
std::string to_csv(std::span<const MetricsReport> reports);

}  // namespace aisens::metrics

#endif  // AISENS_METRICS_METRICS_HPP_
