#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "gsieve/errors.hpp"
#include "gsieve/util/parallel.hpp"

namespace gsieve {

/// (delta + 3/N) / omega^2: the bound on P(A_1 cap ... cap A_N) for events with
/// P(A_i) <= 1 - omega and P(A_i cap A_j) <= P(A_i) P(A_j) + delta.
inline double pairwise_bound(double omega, double delta, std::uint64_t n) {
  require(omega > 0.0 && omega <= 1.0, Errc::invalid_argument, "omega must lie in (0, 1]");
  require(delta >= 0.0 && n >= 1, Errc::invalid_argument, "need delta >= 0 and N >= 1");
  return (delta + 3.0 / static_cast<double>(n)) / (omega * omega);
}

/// Empirical parameters of N events observed on a common sample space.
/// `events[s][i]` says whether event i occurred in sample s.
struct PairwiseStats {
  double omega = 0.0;         ///< 1 - max_i P(A_i)
  double delta = 0.0;         ///< max_{i != j} P(A_i cap A_j) - P(A_i) P(A_j), floored at 0
  double intersection = 0.0;  ///< P(all A_i)
};

inline PairwiseStats pairwise_stats(const std::vector<std::vector<bool>>& events) {
  require(!events.empty() && !events.front().empty(), Errc::invalid_argument, "need samples of at least one event");
  const std::size_t n = events.front().size();
  const double s = static_cast<double>(events.size());
  std::vector<std::uint64_t> single(n, 0);
  std::vector<std::uint64_t> pair(n * n, 0);
  std::uint64_t all = 0;
  for (const auto& row : events) {
    require(row.size() == n, Errc::dimension_mismatch, "ragged event matrix");
    bool every = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!row[i]) {
        every = false;
        continue;
      }
      ++single[i];
      for (std::size_t j = i + 1; j < n; ++j) pair[i * n + j] += row[j] ? 1 : 0;
    }
    all += every ? 1 : 0;
  }
  PairwiseStats st;
  double pmax = 0.0;
  for (auto c : single) pmax = std::max(pmax, static_cast<double>(c) / s);
  st.omega = 1.0 - pmax;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double pij = static_cast<double>(pair[i * n + j]) / s;
      const double pi = static_cast<double>(single[i]) / s;
      const double pj = static_cast<double>(single[j]) / s;
      st.delta = std::max(st.delta, pij - pi * pj);
    }
  }
  st.intersection = static_cast<double>(all) / s;
  return st;
}

struct MomentCheck {
  double mean = 0.0;
  double second_moment = 0.0;
  double p_below = 0.0;  ///< P(X <= T E X)
  double p_above = 0.0;  ///< P(X >= E X / T)
  bool chebyshev_ok = false;      ///< p_below >= 1 - 1/T
  bool second_moment_ok = false;  ///< p_above >= (1 - 1/T)^2 (E X)^2 / E X^2
};

/// Both moment inequalities evaluated exactly on the empirical distribution
/// of the sample, with a relative slack of 1e-12 for rounding.
inline MomentCheck moment_check(std::span<const double> xs, double t) {
  require(!xs.empty(), Errc::invalid_argument, "moment check needs samples");
  require(t >= 1.0, Errc::invalid_argument, "T must be >= 1");
  for (double x : xs) require(x >= 0.0, Errc::invalid_argument, "X must be non-negative");
  const double n = static_cast<double>(xs.size());
  MomentCheck m;
  m.mean = pairwise_sum(xs) / n;
  m.second_moment = pairwise_sum_of(xs.size(), [&](std::size_t i) { return xs[i] * xs[i]; }) / n;
  constexpr double slack = 1e-12;
  std::size_t below = 0;
  std::size_t above = 0;
  for (double x : xs) {
    below += x <= t * m.mean * (1 + slack) ? 1 : 0;
    above += x >= m.mean / t * (1 - slack) ? 1 : 0;
  }
  m.p_below = static_cast<double>(below) / n;
  m.p_above = static_cast<double>(above) / n;
  m.chebyshev_ok = m.p_below >= 1.0 - 1.0 / t - slack;
  const double rhs = m.second_moment > 0.0
                         ? (1.0 - 1.0 / t) * (1.0 - 1.0 / t) * m.mean * m.mean / m.second_moment
                         : 0.0;
  m.second_moment_ok = m.p_above >= rhs - slack;
  return m;
}

}  // namespace gsieve
