#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "gsieve/core/int_mat.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

struct FreeGroupReturn {
  Rational probability;  ///< mu^n(e) exactly
  double kesten = 0.0;   ///< sqrt(2k - 1) / k
};

inline constexpr std::size_t kFreeGroupMaxSteps = 30;

/// Return probability of the simple random walk on the free group F_k with
/// its 2k standard generators. Only the distance to the identity matters:
/// from 0 the walk moves to 1; from r >= 1 it moves to r - 1 with
/// probability 1/(2k) and to r + 1 otherwise.
inline FreeGroupReturn free_group_return_oracle(std::uint32_t k, std::size_t n) {
  require(k >= 2, Errc::invalid_argument, "free group rank must be >= 2");
  require(n <= kFreeGroupMaxSteps, Errc::invalid_argument, "exact recursion is limited to n <= 30");
  const Rational back(1, 2 * k);
  const Rational forward(2 * k - 1, 2 * k);
  std::vector<Rational> dist(n + 2, Rational(0));
  dist[0] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Rational> next(n + 2, Rational(0));
    next[1] += dist[0];
    for (std::size_t r = 1; r <= step; ++r) {
      if (dist[r] == 0) continue;
      next[r - 1] += dist[r] * back;
      next[r + 1] += dist[r] * forward;
    }
    dist = std::move(next);
  }
  return {dist[0], std::sqrt(2.0 * k - 1.0) / k};
}

}  // namespace gsieve
