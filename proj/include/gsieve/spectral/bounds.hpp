#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "gsieve/core/prime.hpp"
#include "gsieve/errors.hpp"
#include "gsieve/spectral/eigen.hpp"
#include "gsieve/spectral/markov.hpp"

namespace gsieve {

/// |sum_i alpha_i^n - |G| mu^n(1)| for a precomputed spectrum.
inline double trace_identity_residual(const CayleyOperator& op, std::span<const double> spectrum, std::size_t n) {
  require(n % 2 == 0, Errc::invalid_argument, "trace identity is checked at even n");
  require(spectrum.size() == op.order, Errc::dimension_mismatch, "spectrum length differs from group order");
  const double lhs = pairwise_sum_of(spectrum.size(), [&](std::size_t i) {
    return std::pow(spectrum[i], static_cast<double>(n));
  });
  Distribution mu = Distribution::delta(op.order, op.identity);
  for (std::size_t i = 0; i < n; ++i) mu = convolve_step(mu, op);
  return std::abs(lhs - static_cast<double>(op.order) * mu[op.identity]);
}

inline double trace_identity_residual(const CayleyOperator& op, std::size_t n, std::size_t dense_cap = kDenseCap) {
  auto spectrum = full_spectrum(op, dense_cap);
  return trace_identity_residual(op, spectrum, n);
}

struct QuasirandomBound {
  std::uint64_t min_dim = 1;
  double beta = 0.0;
  /// The bound is 1, so it carries no quasirandomness (p < 5 for d = 2).
  bool degenerate = false;
};

namespace detail {

/// Landazuri-Seitz minimal degree of a nontrivial projective representation
/// of PSL_d(q), d >= 3: q^{d-1} - 1, except (d, q) in {(3,2), (3,4), (4,2), (4,3)}.
/// V. Landazuri and G. M. Seitz, On the minimal degrees of projective
/// representations of the finite Chevalley groups, J. Algebra 32 (1974).
inline std::uint64_t landazuri_seitz_sl(std::uint64_t q, std::uint32_t d) {
  if (d == 3 && q == 2) return 2;
  if (d == 3 && q == 4) return 4;
  if (d == 4 && q == 2) return 7;
  if (d == 4 && q == 3) return 26;
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i + 1 < d; ++i) {
    require(v <= UINT64_MAX / q, Errc::invalid_argument, "representation bound overflows");
    v *= q;
  }
  return v - 1;
}

}  // namespace detail

/// Lower bound on the dimension of a nontrivial irreducible complex
/// representation of SL_d(F_p), and beta = log(min_dim) / log|SL_d(F_p)|.
/// For d = 2 this is Frobenius' (p - 1)/2.
inline QuasirandomBound quasirandom_bound(std::uint64_t p, std::uint32_t d) {
  PrimeModulus mod(static_cast<std::uint32_t>(p), d);
  QuasirandomBound b;
  b.min_dim = d == 2 ? std::max<std::uint64_t>((p - 1) / 2, 1) : detail::landazuri_seitz_sl(p, d);
  const std::uint64_t order = sl_order(p, d);
  const double log_order = order != 0 ? std::log(static_cast<double>(order))
                                      : static_cast<double>(d * d - 1) * std::log(static_cast<double>(p));
  b.beta = std::log(static_cast<double>(b.min_dim)) / log_order;
  b.degenerate = b.min_dim <= 1;
  return b;
}

/// If mu^n(1) <= |G|^{-(1 - beta/2)} (boundary included), returns
/// e^{-beta/(2 C1)} as an upper bound for alpha_1; otherwise nothing.
inline std::optional<double> observation1_check(double mu_n_at_1, std::size_t n, double beta,
                                                std::size_t group_order, double c1) {
  require(n % 2 == 0, Errc::invalid_argument, "n must be even");
  require(c1 > 0.0 && beta >= 0.0, Errc::invalid_argument, "C1 must be positive and beta non-negative");
  const double log_g = std::log(static_cast<double>(group_order));
  require(static_cast<double>(n) <= c1 * log_g + 1e-12, Errc::invalid_argument, "n exceeds C1 log|G|");
  const double threshold = std::exp(-(1.0 - beta / 2.0) * log_g);
  if (mu_n_at_1 > threshold * (1.0 + 1e-12)) return std::nullopt;
  return std::exp(-beta / (2.0 * c1));
}

}  // namespace gsieve
