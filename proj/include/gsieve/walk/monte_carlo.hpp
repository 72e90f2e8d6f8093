#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gsieve/errors.hpp"
#include "gsieve/util/parallel.hpp"
#include "gsieve/util/stats.hpp"
#include "gsieve/walk/sampler.hpp"

namespace gsieve {

struct WalkCell {
  std::size_t target = 0;  ///< index into WalkStats::targets
  std::size_t n = 0;
  std::uint64_t hits = 0;
  double frequency = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
};

struct WalkStats {
  std::vector<std::size_t> schedule;
  std::uint64_t samples = 0;
  std::vector<std::string> targets;
  std::vector<std::vector<std::uint32_t>> target_primes;
  std::vector<WalkCell> cells;  ///< target-major, then schedule order

  const WalkCell& cell(std::size_t target, std::size_t schedule_pos) const {
    return cells.at(target * schedule.size() + schedule_pos);
  }

  std::size_t target_index(const std::string& name) const {
    auto it = std::find(targets.begin(), targets.end(), name);
    require(it != targets.end(), Errc::invalid_argument, "no target named '" + name + "'");
    return static_cast<std::size_t>(it - targets.begin());
  }
};

/// Monte Carlo estimate of mu^n(A) for every target A and scheduled n, with
/// Wilson 99% intervals. Hit counts are integers accumulated per worker, so
/// the result does not depend on the worker count.
inline WalkStats monte_carlo_walk(const WalkSampler& sampler, std::vector<std::size_t> schedule,
                                  std::uint64_t samples, const std::vector<WalkTarget>& target_list,
                                  unsigned threads = 1) {
  require(samples >= 1, Errc::invalid_argument, "need at least one sample");
  require(!schedule.empty(), Errc::invalid_argument, "empty n schedule");
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());

  std::vector<std::vector<std::size_t>> slots(target_list.size());
  for (std::size_t t = 0; t < target_list.size(); ++t) {
    require(!target_list[t].primes.empty(), Errc::invalid_argument, "target without primes");
    for (auto p : target_list[t].primes) slots[t].push_back(sampler.prime_index(p));
  }
  // schedule position for each step, or npos
  const std::size_t max_n = schedule.back();
  std::vector<std::size_t> pos_of(max_n + 1, SIZE_MAX);
  for (std::size_t i = 0; i < schedule.size(); ++i) pos_of[schedule[i]] = i;

  const std::size_t cells = target_list.size() * schedule.size();
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, samples)));
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(cells, 0));
  const std::uint64_t chunk = (samples + threads - 1) / threads;

  run_workers(threads, [&](unsigned w) {
    auto& hits = partial[w];
    const std::uint64_t lo = std::min<std::uint64_t>(samples, w * chunk);
    const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + chunk);
    for (std::uint64_t s = lo; s < hi; ++s) {
      sampler.run(s, max_n, [&](std::size_t step, const std::vector<MatFp>& r) {
        const std::size_t pos = pos_of[step];
        if (pos == SIZE_MAX) return;
        for (std::size_t t = 0; t < target_list.size(); ++t) {
          bool hit = true;
          for (std::size_t j = 0; j < slots[t].size() && hit; ++j) hit = target_list[t].contains(j, r[slots[t][j]]);
          if (hit) ++hits[t * schedule.size() + pos];
        }
      });
    }
  });

  WalkStats stats;
  stats.schedule = schedule;
  stats.samples = samples;
  for (const auto& t : target_list) {
    stats.targets.push_back(t.name);
    stats.target_primes.push_back(t.primes);
  }
  stats.cells.reserve(cells);
  for (std::size_t t = 0; t < target_list.size(); ++t) {
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      std::uint64_t h = 0;
      for (const auto& part : partial) h += part[t * schedule.size() + i];
      const auto ci = wilson_interval(h, samples);
      stats.cells.push_back({t, schedule[i], h, static_cast<double>(h) / static_cast<double>(samples), ci.lo, ci.hi});
    }
  }
  return stats;
}

struct DecayFit {
  double c = 0.0;  ///< decay rate, minus the slope of log frequency in n
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n_lo = 0;  ///< fit window
  std::size_t n_hi = 0;
  std::size_t points = 0;

  friend bool operator==(const DecayFit&, const DecayFit&) = default;
};

inline constexpr std::size_t kMinFitPoints = 4;

/// Fits log f = intercept - c n over the points with f > floor.
inline DecayFit log_decay_fit(const std::vector<std::size_t>& ns, const std::vector<double>& freqs, double floor) {
  require(ns.size() == freqs.size(), Errc::dimension_mismatch, "schedule and frequencies differ in length");
  std::vector<double> x;
  std::vector<double> y;
  DecayFit fit;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(freqs[i] > floor)) continue;
    if (x.empty()) fit.n_lo = ns[i];
    fit.n_hi = ns[i];
    x.push_back(static_cast<double>(ns[i]));
    y.push_back(std::log(freqs[i]));
  }
  require(x.size() >= kMinFitPoints, Errc::insufficient_signal,
          std::to_string(x.size()) + " points above the noise floor, need " + std::to_string(kMinFitPoints));
  const auto ls = least_squares(x, y);
  fit.c = -ls.slope;
  fit.intercept = ls.intercept;
  fit.r2 = ls.r2;
  fit.points = x.size();
  return fit;
}

/// Monte Carlo noise floor 5 / sqrt(samples).
inline double noise_floor(std::uint64_t samples) { return 5.0 / std::sqrt(static_cast<double>(samples)); }

inline DecayFit nonconcentration_fit(const WalkStats& stats, std::size_t target) {
  std::vector<double> freqs;
  for (std::size_t i = 0; i < stats.schedule.size(); ++i) freqs.push_back(stats.cell(target, i).frequency);
  return log_decay_fit(stats.schedule, freqs, noise_floor(stats.samples));
}

}  // namespace gsieve
