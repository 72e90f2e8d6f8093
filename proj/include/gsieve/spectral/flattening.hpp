#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gsieve/spectral/markov.hpp"

namespace gsieve {

struct FlatteningPoint {
  std::size_t n = 0;
  double l2 = 0.0;     ///< ||mu^n||_2
  double ratio = 0.0;  ///< ||mu^{2n}||_2 / ||mu^n||_2
};

/// l2 norms of mu^n * nu and mu^{2n} * nu along a schedule of step counts,
/// by exact convolution. The default start is the point mass at the identity.
inline std::vector<FlatteningPoint> flattening_trajectory(const CayleyOperator& op,
                                                          const std::vector<std::size_t>& schedule,
                                                          Distribution start, unsigned threads = 1) {
  std::vector<FlatteningPoint> out;
  if (schedule.empty()) return out;
  const std::size_t horizon = 2 * *std::max_element(schedule.begin(), schedule.end());
  std::vector<double> norms;
  norms.reserve(horizon + 1);
  Distribution mu = std::move(start);
  norms.push_back(mu.l2_norm());
  for (std::size_t i = 0; i < horizon; ++i) {
    mu = convolve_step(mu, op, threads);
    norms.push_back(mu.l2_norm());
  }
  for (auto n : schedule) out.push_back({n, norms[n], norms[2 * n] / norms[n]});
  return out;
}

inline std::vector<FlatteningPoint> flattening_trajectory(const CayleyOperator& op,
                                                          const std::vector<std::size_t>& schedule,
                                                          unsigned threads = 1) {
  return flattening_trajectory(op, schedule, Distribution::delta(op.order, op.identity), threads);
}

}  // namespace gsieve
