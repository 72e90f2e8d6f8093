#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gsieve/errors.hpp"
#include "gsieve/util/parallel.hpp"

namespace gsieve {

/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for hits out of n trials.
inline Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z = kZ99) {
  require(n >= 1 && hits <= n, Errc::invalid_argument, "Wilson interval needs 0 <= hits <= n, n >= 1");
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double radius = z / denom * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
  return {hits == 0 ? 0.0 : std::max(0.0, center - radius), hits == n ? 1.0 : std::min(1.0, center + radius)};
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = intercept + slope x. r2 is 1 when y is constant.
inline LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, Errc::invalid_argument, "fit needs >= 2 paired points");
  const double n = static_cast<double>(x.size());
  const double mx = pairwise_sum(x) / n;
  const double my = pairwise_sum(y) / n;
  const double sxx = pairwise_sum_of(x.size(), [&](std::size_t i) { return (x[i] - mx) * (x[i] - mx); });
  const double sxy = pairwise_sum_of(x.size(), [&](std::size_t i) { return (x[i] - mx) * (y[i] - my); });
  const double syy = pairwise_sum_of(x.size(), [&](std::size_t i) { return (y[i] - my) * (y[i] - my); });
  require(sxx > 0.0, Errc::invalid_argument, "fit needs at least two distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

}  // namespace gsieve
