//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/metrics/metrics.hpp"

#include <cmath>

#include "aisens/error.hpp"
#include "aisens/util/io.hpp"

namespace aisens::metrics {

namespace {

constexpr std::size_t kPairwiseThreshold = 4096;

void check(std::span<const double> y, std::span<const double> y_hat) {
  if (y.size() != y_hat.size())
    throw LengthMismatch("y has " + std::to_string(y.size())
                         + " values, y_hat has " + std::to_string(y_hat.size()));
  if (y.empty())
    throw EmptyInput("metrics need at least one value");
}

template <class F>
double sum_terms(std::size_t b, std::size_t e, const F &term) {
  if (e - b <= kPairwiseThreshold) {
    double s = 0;
    for (std::size_t i = b; i < e; ++i)
      s += term(i);
    return s;
  }
  const std::size_t mid = b + (e - b) / 2;
  return sum_terms(b, mid, term) + sum_terms(mid, e, term);
}

}  // namespace

double robust_sum(std::span<const double> v) {
  return sum_terms(0, v.size(), [&](std::size_t i) { return v[i]; });
}

double mae(std::span<const double> y, std::span<const double> y_hat) {
  check(y, y_hat);
  const double s = sum_terms(0, y.size(), [&](std::size_t i) {
    return std::abs(y[i] - y_hat[i]);
  });
  return s / static_cast<double>(y.size());
}

double rmse(std::span<const double> y, std::span<const double> y_hat) {
  check(y, y_hat);
  const double s = sum_terms(0, y.size(), [&](std::size_t i) {
    const double d = y[i] - y_hat[i];
    return d * d;
  });
  return std::sqrt(s / static_cast<double>(y.size()));
}

double r2(std::span<const double> y, std::span<const double> y_hat) {
  check(y, y_hat);
  const double mean = robust_sum(y) / static_cast<double>(y.size());
  const double ss_tot = sum_terms(0, y.size(), [&](std::size_t i) {
    return (y[i] - mean) * (y[i] - mean);
  });
  if (!(ss_tot > 0.0))
    throw ZeroVariance("r2 is undefined when all true values are equal");
  const double ss_res = sum_terms(0, y.size(), [&](std::size_t i) {
    const double d = y[i] - y_hat[i];
    return d * d;
  });
  return 1.0 - ss_res / ss_tot;
}

MetricsReport evaluate(const std::string &property, const std::string &split,
                       std::span<const double> y, std::span<const double> y_hat) {
  MetricsReport r;
  r.property = property;
  r.split = split;
  r.n = y.size();
  r.mae = mae(y, y_hat);
  r.rmse = rmse(y, y_hat);
  try {
    r.r2 = metrics::r2(y, y_hat);
  } catch (const ZeroVariance &) {
    r.r2 = std::nan("");
  }
  return r;
}

std::string to_csv(std::span<const MetricsReport> reports) {
  std::string out = "property,split,n,mae,rmse,r2\n";
  for (const auto &r: reports) {
    out += r.property + "," + r.split + "," + std::to_string(r.n) + ","
         + util::format_double(r.mae) + "," + util::format_double(r.rmse) + ","
         + util::format_double(r.r2) + "\n";
  }
  return out;
}

}  // namespace aisens::metrics
