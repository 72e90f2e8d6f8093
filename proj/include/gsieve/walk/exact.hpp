#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "gsieve/core/group_table.hpp"
#include "gsieve/core/id_set.hpp"
#include "gsieve/core/subgroup_check.hpp"
#include "gsieve/errors.hpp"
#include "gsieve/spectral/eigen.hpp"
#include "gsieve/spectral/markov.hpp"

namespace gsieve {

struct ReturnProbability {
  double value = 0.0;  ///< mu^n(1) by convolution
  double l2_form = 0.0;  ///< ||mu^{n/2}||_2^2 for even n, else NaN
};

inline constexpr double kReturnAgreementTol = 1e-10;

/// mu^n(1) by exact convolution. For even n it is recomputed as
/// ||mu^{n/2}||_2^2 and the two must agree to 1e-10.
inline ReturnProbability return_probability(const CayleyOperator& op, std::size_t n, unsigned threads = 1) {
  Distribution mu = Distribution::delta(op.order, op.identity);
  ReturnProbability out{0.0, std::nan("")};
  for (std::size_t i = 1; i <= n; ++i) {
    mu = convolve_step(mu, op, threads);
    if (n % 2 == 0 && 2 * i == n) out.l2_form = dot(mu.mass(), mu.mass());
  }
  out.value = mu[op.identity];
  if (n == 0) out.l2_form = 1.0;
  if (n % 2 == 0) {
    require(std::abs(out.value - out.l2_form) <= kReturnAgreementTol, Errc::verification_failure,
            "mu^n(1) and ||mu^{n/2}||^2 disagree");
  }
  return out;
}

inline double mass_of(const Distribution& mu, const IdSet& h) {
  const auto ids = h.ids();
  return pairwise_sum_of(ids.size(), [&](std::size_t i) { return mu[ids[i]]; });
}

/// mu^k(H) for k = 0..n_max. H is checked to be a subgroup first, and the
/// even-time values must be non-increasing.
template <GroupElement E>
std::vector<double> subgroup_mass_series(const GroupTable<E>& table, const CayleyOperator& op, const IdSet& h,
                                         std::size_t n_max, unsigned threads = 1) {
  require(is_subgroup(table, h), Errc::not_a_subgroup, "id set is not closed under multiplication");
  std::vector<double> out;
  out.reserve(n_max + 1);
  Distribution mu = Distribution::delta(op.order, op.identity);
  out.push_back(mass_of(mu, h));
  for (std::size_t k = 1; k <= n_max; ++k) {
    mu = convolve_step(mu, op, threads);
    out.push_back(mass_of(mu, h));
    if (k % 2 == 0) {
      require(out[k] <= out[k - 2] + 1e-12, Errc::verification_failure,
              "mu^{2n}(H) increased at n = " + std::to_string(k / 2));
    }
  }
  return out;
}

template <GroupElement E>
double subgroup_mass(const GroupTable<E>& table, const CayleyOperator& op, const IdSet& h, std::size_t n,
                     unsigned threads = 1) {
  return subgroup_mass_series(table, op, h, n, threads).back();
}

template <GroupElement E>
double subgroup_mass(const GroupTable<E>& table, const IdSet& h, std::size_t n, unsigned threads = 1) {
  return subgroup_mass(table, table.cayley(), h, n, threads);
}

struct Equidistribution {
  double deviation = 0.0;  ///< max_x |mu^n(x) - 1/|G||
  /// rho^n sqrt(1 - 1/|G|) with rho = max(|alpha_1|, |alpha_min|): the gap
  /// side of the equivalence. NaN when no spectrum was supplied.
  double spectral_bound = std::nan("");
  /// (|G| (mu^n(1) - 1/|G|))^{1/n} for even n >= 2: an upper bound on alpha_1
  /// read off the walk, the other side of the equivalence.
  double alpha1_upper = std::nan("");
};

inline Equidistribution equidistribution_test(const Distribution& start, const CayleyOperator& op, std::size_t n,
                                              const SpectralReport* spectrum = nullptr, unsigned threads = 1) {
  Distribution mu = start;
  for (std::size_t i = 0; i < n; ++i) mu = convolve_step(mu, op, threads);
  const double u = 1.0 / static_cast<double>(op.order);
  Equidistribution out;
  for (double m : mu.mass()) out.deviation = std::max(out.deviation, std::abs(m - u));
  if (spectrum != nullptr) {
    const double rho = std::max(std::abs(spectrum->alpha1), std::abs(spectrum->alpha_min));
    out.spectral_bound = std::pow(rho, static_cast<double>(n)) * std::sqrt(1.0 - u);
  }
  if (n >= 2 && n % 2 == 0) {
    const double excess = std::max(0.0, mu[op.identity] - u);
    out.alpha1_upper = std::pow(static_cast<double>(op.order) * excess, 1.0 / static_cast<double>(n));
  }
  return out;
}

inline Equidistribution equidistribution_test(const CayleyOperator& op, std::size_t n,
                                              const SpectralReport* spectrum = nullptr, unsigned threads = 1) {
  return equidistribution_test(Distribution::delta(op.order, op.identity), op, n, spectrum, threads);
}

}  // namespace gsieve
