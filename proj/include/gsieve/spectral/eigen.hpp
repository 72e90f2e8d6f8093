#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsieve/core/cayley.hpp"
#include "gsieve/errors.hpp"
#include "gsieve/spectral/markov.hpp"

namespace gsieve {

enum class SpectralMethod { dense, power_iteration };

inline std::string to_string(SpectralMethod m) {
  return m == SpectralMethod::dense ? "dense" : "power_iteration";
}

/// Dense O(n^3) solves stay within seconds up to this order.
inline constexpr std::size_t kDenseCap = 4000;

struct SpectralOptions {
  SpectralMethod method = SpectralMethod::dense;
  double tol = 1e-10;
  std::size_t max_iter = 1'000'000;
  std::size_t dense_cap = kDenseCap;
  unsigned threads = 1;
};

struct SpectralReport {
  double lambda1 = 0.0;
  double alpha1 = 0.0;
  double alpha_min = 0.0;
  SpectralMethod method = SpectralMethod::dense;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = true;
  /// Multiplicity of eigenvalue 0 of the Laplacian, i.e. connected components.
  /// Only the dense path can see it; the iterative path reports 1.
  std::size_t zero_multiplicity = 1;
  /// Eigenvalues of T_mu, descending (dense only).
  std::vector<double> spectrum;

  friend bool operator==(const SpectralReport&, const SpectralReport&) = default;
};

/// Eigenvalues of T_mu in descending order; alpha_0 = 1.
inline std::vector<double> full_spectrum(const CayleyOperator& op, std::size_t dense_cap = kDenseCap) {
  require(op.order <= dense_cap, Errc::too_large_for_dense,
          "order " + std::to_string(op.order) + " exceeds dense cap " + std::to_string(dense_cap));
  const auto n = static_cast<Eigen::Index>(op.order);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  const double w = (op.lazy ? 0.5 : 1.0) / static_cast<double>(op.degree());
  for (const auto& act : op.actions) {
    for (Eigen::Index x = 0; x < n; ++x) t(x, static_cast<Eigen::Index>(act[static_cast<std::size_t>(x)])) += w;
  }
  if (op.lazy) t.diagonal().array() += 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, Errc::not_converged, "dense eigensolve failed");
  std::vector<double> alpha(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(alpha.begin(), alpha.end(), std::greater<>());
  return alpha;
}

namespace detail {

struct PowerResult {
  double theta = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Deterministic +-1 start pattern from a hash of the id.
inline std::vector<double> start_vector(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t z = i + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    z ^= z >> 31U;
    v[i] = (z & 1U) ? 1.0 : -1.0;
  }
  return v;
}

inline void remove_mean(std::vector<double>& v) {
  const double mean = pairwise_sum(v) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

/// Power iteration for the top eigenvalue of L = (I + sign*T)/2 on the
/// mean-zero subspace, deflating the constant vector at every step. With
/// sign = +1 the top eigenvalue is (1 + alpha_1)/2; with sign = -1 it is
/// (1 - alpha_min)/2. L is positive semidefinite in both cases, so the
/// Rayleigh quotients increase towards the eigenvalue.
inline PowerResult power_iterate(const CayleyOperator& op, double sign, const SpectralOptions& opt) {
  std::vector<double> v = start_vector(op.order);
  remove_mean(v);
  double nv = norm2(v);
  for (double& x : v) x /= nv;

  PowerResult res;
  double theta_prev = std::numeric_limits<double>::quiet_NaN();
  double delta_prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    std::vector<double> w = apply_markov(op, v, opt.threads);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 0.5 * (v[i] + sign * w[i]);
    remove_mean(w);
    const double theta = dot(v, w);
    std::vector<double> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = w[i] - theta * v[i];
    res.theta = theta;
    res.residual = 2.0 * norm2(r);  // in units of T
    res.iterations = it;
    const double nw = norm2(w);
    if (nw <= 1e-300) {
      res.converged = true;
      return res;
    }
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nw;

    const double delta = std::abs(theta - theta_prev);
    if (delta < opt.tol) {
      // geometric tail of the remaining increments
      const double q = delta_prev > 0.0 ? delta / delta_prev : 0.0;
      const double tail = delta == 0.0 ? 0.0 : (q < 1.0 ? delta * q / (1.0 - q) : INFINITY);
      if (tail < opt.tol) {
        res.converged = true;
        return res;
      }
    }
    theta_prev = theta;
    delta_prev = delta;
  }
  return res;
}

}  // namespace detail

/// First nonzero Laplacian eigenvalue lambda_1 = 1 - alpha_1 of the Cayley graph.
///
/// The dense path diagonalizes T_mu outright; if the generators do not
/// generate, eigenvalue 0 of the Laplacian repeats and lambda_1 reported is 0.
/// The iterative path runs deflated power iteration twice, once for alpha_1
/// and once for alpha_min. An exhausted iteration budget is reported through
/// `converged = false` with the best Rayleigh quotient, not thrown.
inline SpectralReport lambda1(const CayleyOperator& op, const SpectralOptions& opt = {}) {
  require(op.order >= 2, Errc::invalid_argument, "lambda_1 needs a group of order >= 2");
  SpectralReport rep;
  rep.method = opt.method;
  if (opt.method == SpectralMethod::dense) {
    rep.spectrum = full_spectrum(op, opt.dense_cap);
    rep.alpha1 = rep.spectrum[1];
    rep.alpha_min = rep.spectrum.back();
    rep.lambda1 = 1.0 - rep.alpha1;
    rep.zero_multiplicity = static_cast<std::size_t>(
        std::count_if(rep.spectrum.begin(), rep.spectrum.end(), [](double a) { return std::abs(1.0 - a) < 1e-9; }));
    rep.iterations = 1;
    rep.residual = 0.0;
    return rep;
  }
  auto top = detail::power_iterate(op, +1.0, opt);
  auto bottom = detail::power_iterate(op, -1.0, opt);
  rep.alpha1 = 2.0 * top.theta - 1.0;
  rep.alpha_min = 1.0 - 2.0 * bottom.theta;
  rep.lambda1 = 1.0 - rep.alpha1;
  rep.iterations = top.iterations + bottom.iterations;
  rep.residual = std::max(top.residual, bottom.residual);
  rep.converged = top.converged && bottom.converged;
  return rep;
}

}  // namespace gsieve
