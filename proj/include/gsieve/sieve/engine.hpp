#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsieve/sieve/battery.hpp"
#include "gsieve/sieve/target.hpp"
#include "gsieve/walk/monte_carlo.hpp"
#include "gsieve/walk/sampler.hpp"

namespace gsieve {

struct PrimeDensity {
  std::uint32_t p = 0;
  std::size_t order = 0;
  bool surjective = false;
  Rational density;  ///< |pi_p(Z)| / |G_p|

  friend bool operator==(const PrimeDensity&, const PrimeDensity&) = default;
};

struct SieveEstimate {
  std::size_t n = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;

  friend bool operator==(const SieveEstimate&, const SieveEstimate&) = default;
};

struct SieveReport {
  std::string target;
  std::size_t battery_size = 0;
  std::uint64_t samples = 0;
  std::vector<PrimeDensity> primes;
  /// min over primes of 1 - density: every excluded set misses at least this
  /// fraction of its group.
  double alpha_min = 0.0;
  std::vector<SieveEstimate> estimates;
  std::optional<DecayFit> fit;
  double b_hat = 0.0;
  double n_threshold = 0.0;  ///< B_hat log N
  std::size_t bound_points = 0;  ///< scheduled n >= n_threshold
  bool bound_held = false;       ///< estimate <= 1/N at every such n (false if none)
  std::optional<std::size_t> first_below;  ///< first scheduled n with estimate <= 1/N

  friend bool operator==(const SieveReport&, const SieveReport&) = default;
};

/// A walk sample hits Z at time n when, at every battery prime, its residue
/// lies in that prime's excluded set. Reports the hit frequency along the
/// schedule and checks it against 1/N from n >= B_hat log N on.
inline SieveReport sieve_run(const WalkSampler& sampler, const TargetPredicate& target, const PrimeBattery& battery,
                             const std::vector<std::size_t>& schedule, std::uint64_t samples, double b_hat,
                             unsigned threads = 1) {
  require(!battery.primes.empty(), Errc::empty_battery, "battery has no primes");
  SieveReport rep;
  rep.target = target.name();
  rep.battery_size = battery.size();
  rep.samples = samples;
  rep.b_hat = b_hat;
  rep.n_threshold = b_hat * std::log(static_cast<double>(battery.size()));

  std::vector<const PrimeExclusion*> sets;
  for (auto p : battery.primes) {
    sampler.prime_index(p);
    const PrimeExclusion& e = target.at_prime(p);
    require(e.surjective(), Errc::verification_failure,
            "image of Gamma mod " + std::to_string(p) + " has order " + std::to_string(e.order) + ", not " +
                std::to_string(e.expected_order));
    rep.primes.push_back({p, e.order, true, e.density()});
    sets.push_back(&e);
  }
  rep.alpha_min = 1.0;
  for (const auto& pd : rep.primes) rep.alpha_min = std::min(rep.alpha_min, 1.0 - pd.density.convert_to<double>());

  // Smallest densities first so the conjunction usually fails early; the
  // outcome does not depend on the order.
  std::vector<std::size_t> order(sets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rep.primes[a].density < rep.primes[b].density; });
  WalkTarget conj;
  conj.name = rep.target;
  std::vector<const PrimeExclusion*> ordered;
  for (auto i : order) {
    conj.primes.push_back(battery.primes[i]);
    ordered.push_back(sets[i]);
  }
  conj.contains = [ordered](std::size_t j, const MatFp& g) { return ordered[j]->contains(g); };

  const auto stats = monte_carlo_walk(sampler, schedule, samples, {conj}, threads);
  std::vector<double> freqs;
  for (std::size_t i = 0; i < stats.schedule.size(); ++i) {
    const auto& c = stats.cell(0, i);
    rep.estimates.push_back({c.n, c.hits, c.frequency, c.ci_lo, c.ci_hi});
    freqs.push_back(c.frequency);
  }
  try {
    rep.fit = log_decay_fit(stats.schedule, freqs, noise_floor(samples));
  } catch (const Error& e) {
    if (e.code() != Errc::insufficient_signal) throw;
  }
  const double inv_n = 1.0 / static_cast<double>(battery.size());
  bool held = true;
  for (const auto& est : rep.estimates) {
    if (!rep.first_below && est.estimate <= inv_n) rep.first_below = est.n;
    if (static_cast<double>(est.n) >= rep.n_threshold) {
      ++rep.bound_points;
      held = held && est.estimate <= inv_n;
    }
  }
  rep.bound_held = rep.bound_points > 0 && held;
  return rep;
}

}  // namespace gsieve
