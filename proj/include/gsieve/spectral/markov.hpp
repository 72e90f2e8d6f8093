#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gsieve/core/cayley.hpp"
#include "gsieve/errors.hpp"
#include "gsieve/util/parallel.hpp"

namespace gsieve {

/// (T f)(x) = (1/k) sum_s f(s^{-1} x). S is symmetric, so this equals the mean
/// of f over s x, which is what `actions` tabulates. Lazy operators return
/// (f + T f) / 2. Applied to a probability vector this is one convolution
/// step mu * nu.
inline std::vector<double> apply_markov(const CayleyOperator& op, std::span<const double> f,
                                        unsigned threads = 1) {
  require(f.size() == op.order, Errc::dimension_mismatch,
          "vector length " + std::to_string(f.size()) + " != group order " + std::to_string(op.order));
  std::vector<double> out(op.order);
  const double inv_k = 1.0 / static_cast<double>(op.degree());
  parallel_for(op.order, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      double acc = 0.0;
      for (const auto& act : op.actions) acc += f[act[x]];
      out[x] = op.lazy ? 0.5 * (f[x] + acc * inv_k) : acc * inv_k;
    }
  });
  return out;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return pairwise_sum_of(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// <Delta f, f> = <f, f> - <T f, f>.
inline double dirichlet_form(const CayleyOperator& op, std::span<const double> f) {
  auto tf = apply_markov(op, f);
  return dot(f, f) - dot(tf, f);
}

/// Probability vector over the ids of an enumerated group.
class Distribution {
 public:
  explicit Distribution(std::vector<double> mass) : mass_(std::move(mass)) {
    require(!mass_.empty(), Errc::invalid_argument, "distribution over an empty group");
    for (double m : mass_) require(m >= 0.0 && std::isfinite(m), Errc::invalid_argument, "negative mass");
    const double total = pairwise_sum(mass_);
    require(std::abs(total - 1.0) <= 1e-12 * std::max<double>(1.0, std::sqrt(static_cast<double>(mass_.size()))),
            Errc::invalid_argument, "mass does not sum to 1");
  }

  static Distribution delta(std::size_t order, ElementId at) {
    std::vector<double> m(order, 0.0);
    m.at(at) = 1.0;
    return Distribution(std::move(m));
  }

  static Distribution uniform(std::size_t order) {
    return Distribution(std::vector<double>(order, 1.0 / static_cast<double>(order)));
  }

  std::size_t size() const noexcept { return mass_.size(); }
  double operator[](ElementId x) const { return mass_[x]; }
  const std::vector<double>& mass() const noexcept { return mass_; }
  double total() const { return pairwise_sum(mass_); }
  double l2_norm() const { return norm2(mass_); }

 private:
  std::vector<double> mass_;
};

}  // namespace gsieve

namespace gsieve {

/// One step of the walk: mu * dist.
inline Distribution convolve_step(const Distribution& dist, const CayleyOperator& op, unsigned threads = 1) {
  require(dist.size() == op.order, Errc::dimension_mismatch, "distribution length differs from group order");
  auto next = apply_markov(op, dist.mass(), threads);
  for (double& m : next) m = std::max(0.0, m);
  return Distribution(std::move(next));
}

/// mu^0, mu^1, ..., mu^n started from the identity.
inline std::vector<Distribution> walk_powers(const CayleyOperator& op, std::size_t n, unsigned threads = 1) {
  std::vector<Distribution> out;
  out.reserve(n + 1);
  out.push_back(Distribution::delta(op.order, op.identity));
  for (std::size_t i = 0; i < n; ++i) out.push_back(convolve_step(out.back(), op, threads));
  return out;
}

}  // namespace gsieve
