#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "gsieve/core/presets.hpp"
#include "gsieve/sieve/battery.hpp"
#include "gsieve/sieve/bounds.hpp"
#include "gsieve/sieve/densities.hpp"
#include "gsieve/sieve/engine.hpp"
#include "gsieve/sieve/target.hpp"
#include "support.hpp"

namespace gsieve {
namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::invalid_argument;
}

TargetSpec custom(std::function<bool(std::uint32_t, const MatFp&)> f) {
  TargetSpec t;
  t.kind = TargetKind::custom;
  t.custom = std::move(f);
  return t;
}

PrimeBattery battery_of(std::vector<std::uint32_t> primes) {
  PrimeBattery b;
  b.primes = std::move(primes);
  return b;
}

TEST(Battery, Examples) {
  EXPECT_EQ(select_primes(4, 1, 3).primes, (std::vector<std::uint32_t>{3, 5, 7, 11}));
  EXPECT_EQ(select_primes(3, 3, 7).primes, (std::vector<std::uint32_t>{7, 13, 19}));
  EXPECT_EQ(select_primes(2, 4, 3).primes, (std::vector<std::uint32_t>{5, 13}));
}

TEST(Battery, EntriesArePrimeCongruentAndAboveFloor) {
  for (std::uint32_t m : {1U, 2U, 5U, 12U, 30U}) {
    const auto b = select_primes(40, m, 50);
    ASSERT_EQ(b.size(), 40U);
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto p = b.primes[i];
      EXPECT_GE(p, 50U);
      EXPECT_EQ(p % m, 1 % m);
      for (std::uint32_t q = 2; q * q <= p; ++q) ASSERT_NE(p % q, 0U) << p;
      if (i) {
        EXPECT_LT(b.primes[i - 1], p);
      }
    }
  }
}

TEST(Battery, CeilingIsEnforced) {
  EXPECT_EQ(code_of([] { select_primes(100, 7, 3, 500); }), Errc::search_bound_exceeded);
  EXPECT_EQ(code_of([] { select_primes(0, 1, 3); }), Errc::invalid_argument);
}

TEST(Densities, PowerMapImage) {
  // Oracle: direct enumeration of {g^m} over SL_2(F_p) with Python tuples.
  EXPECT_EQ(m_power_density(13, 3), Rational(2, 3));
  EXPECT_EQ(m_power_density(7, 3), Rational(2, 3));
  EXPECT_EQ(m_power_density(7, 2), Rational(37, 84));
  EXPECT_EQ(m_power_density(5, 2), Rational(23, 60));
  EXPECT_EQ(m_power_density(11, 5), Rational(3, 5));
  EXPECT_LE(m_power_density(13, 3), Rational(5, 6));
}

TEST(Densities, PowerMapIsBijectiveForCoprimeExponent) {
  EXPECT_EQ(m_power_density(7, 1), Rational(1));
  // |SL_2(F_p)| = p(p^2 - 1)
  for (std::uint32_t p : {5U, 7U, 11U, 13U}) {
    const std::uint64_t order = std::uint64_t{p} * (p * p - 1);
    for (std::uint64_t m = 2; m <= 40; ++m) {
      if (std::gcd(m, order) == 1) {
        EXPECT_EQ(m_power_density(p, m), Rational(1)) << p << " " << m;
      }
    }
  }
}

TEST(Densities, PowerBoundForCongruentPrimes) {
  const Rational bound(5, 6);  // 1 - 1/(3 d!) at d = 2
  for (std::uint64_t m : {2U, 3U, 4U, 6U}) {
    for (auto p : select_primes(3, static_cast<std::uint32_t>(m), 5).primes) {
      if (p > 40) continue;
      EXPECT_LE(m_power_density(p, m), bound) << p << " " << m;
    }
  }
}

TEST(Densities, CycleTypeExamples) {
  EXPECT_EQ(cycle_type_density(7, {2}), Rational(3, 8));
  EXPECT_EQ(cycle_type_density(7, {1, 1}), Rational(1, 3));
  EXPECT_EQ(code_of([] { cycle_type_density(7, {1}); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([] { cycle_type_density(7, {0, 2}); }), Errc::invalid_argument);
}

TEST(Densities, CensusPartitionsTheGroup) {
  for (std::uint32_t p : {3U, 5U, 7U, 11U}) {
    const auto c = cycle_census(enumerate_sl(p, 2));
    Rational total = c.non_regular_density();
    for (const auto& [type, count] : c.by_type) total += c.density(type);
    EXPECT_EQ(total, Rational(1)) << p;
    // Semisimple classes in SL_2: (p - 3)/2 split traces of size p(p+1),
    // (p - 1)/2 non-split of size p(p-1).
    EXPECT_EQ(c.density({1, 1}), Rational((p - 3) * (p + 1), 2 * (p * p - 1)));
    EXPECT_EQ(c.density({2}), Rational((p - 1) * (p - 1), 2 * (p * p - 1)));
  }
  const auto c3 = cycle_census(enumerate_sl(2, 3));
  Rational total = c3.non_regular_density();
  for (const auto& [type, count] : c3.by_type) total += c3.density(type);
  EXPECT_EQ(total, Rational(1));
  EXPECT_GT(c3.density({3}), Rational(0));
}

TEST(Target, ExcludedSetsMatchDensities) {
  TargetSpec spec;
  spec.kind = TargetKind::missing_cycle_type;
  spec.partition = {2};
  const auto t = build_target(spec, presets::sanov(), {5, 7, 11});
  for (const auto& e : t.per_prime()) {
    EXPECT_TRUE(e.surjective());
    EXPECT_EQ(e.order, e.expected_order);
    EXPECT_EQ(e.density(), Rational(1) - cycle_type_density(e.p, {2}));
  }
  EXPECT_EQ(code_of([&] { t.at_prime(13); }), Errc::predicate_missing_prime);
  EXPECT_EQ(t.name(), "missing_cycle_type(2)");
}

TEST(Target, MembershipByRank) {
  TargetSpec spec;
  spec.kind = TargetKind::trace_value;
  spec.trace = 2;
  const auto t = build_target(spec, presets::sanov(), {7});
  const auto& e = t.at_prime(7);
  const auto table = enumerate_sl(7, 2);
  std::size_t hits = 0;
  for (const auto& g : table.elements()) {
    const bool in = g.trace() == 2;
    EXPECT_EQ(e.contains(g), in);
    hits += in ? 1 : 0;
  }
  EXPECT_EQ(Rational(hits, table.order()), e.density());
  EXPECT_EQ(hits, 49U);  // unipotent class: p^2 elements
}

TEST(Target, Validation) {
  TargetSpec bad_m;
  bad_m.kind = TargetKind::m_power;
  bad_m.m = 1;
  EXPECT_EQ(code_of([&] { build_target(bad_m, presets::sanov(), {5}); }), Errc::invalid_argument);
  TargetSpec bad_part;
  bad_part.partition = {1, 2};
  EXPECT_EQ(code_of([&] { build_target(bad_part, presets::sanov(), {5}); }), Errc::invalid_argument);
  TargetSpec no_fn;
  no_fn.kind = TargetKind::custom;
  EXPECT_EQ(code_of([&] { build_target(no_fn, presets::sanov(), {5}); }), Errc::invalid_argument);
}

TEST(SieveRun, EmptyAndFullExcludedSets) {
  const auto gens = presets::sanov();
  const WalkSampler sampler(gens, {5, 7}, 11);
  const std::vector<std::size_t> schedule{0, 1, 5, 20};
  const auto battery = battery_of({5, 7});

  const auto none = build_target(custom([](std::uint32_t p, const MatFp&) { return p == 5; }), gens, {5, 7});
  const auto r0 = sieve_run(sampler, none, battery, schedule, 2000, 1.0);
  for (const auto& e : r0.estimates) EXPECT_EQ(e.estimate, 0.0);
  EXPECT_EQ(r0.primes[1].density, Rational(0));
  EXPECT_FALSE(r0.fit.has_value());

  const auto all = build_target(custom([](std::uint32_t, const MatFp&) { return true; }), gens, {5, 7});
  const auto r1 = sieve_run(sampler, all, battery, schedule, 2000, 1.0);
  for (const auto& e : r1.estimates) {
    EXPECT_EQ(e.estimate, 1.0);
    EXPECT_EQ(e.ci_hi, 1.0);
  }
  EXPECT_EQ(r1.alpha_min, 0.0);
  EXPECT_EQ(r1.battery_size, 2U);
}

TEST(SieveRun, Errors) {
  const auto gens = presets::sanov();
  const WalkSampler sampler(gens, {5, 7}, 1);
  const auto t = build_target(custom([](std::uint32_t, const MatFp&) { return true; }), gens, {5});
  EXPECT_EQ(code_of([&] { sieve_run(sampler, t, battery_of({}), {1}, 10, 1.0); }), Errc::empty_battery);
  EXPECT_EQ(code_of([&] { sieve_run(sampler, t, battery_of({5, 7}), {1}, 10, 1.0); }),
            Errc::predicate_missing_prime);
  EXPECT_EQ(code_of([&] { sieve_run(sampler, t, battery_of({11}), {1}, 10, 1.0); }),
            Errc::predicate_missing_prime);
}

TEST(SieveRun, NonSurjectiveImageAborts) {
  const auto gens = presets::sanov();
  const WalkSampler sampler(gens, {2}, 1);
  const auto t = build_target(custom([](std::uint32_t, const MatFp&) { return true; }), gens, {2});
  EXPECT_FALSE(t.at_prime(2).surjective());
  EXPECT_EQ(code_of([&] { sieve_run(sampler, t, battery_of({2}), {1}, 10, 1.0); }), Errc::verification_failure);
}

TEST(SieveRun, AddingAPrimeNeverIncreasesHits) {
  const auto gens = presets::sanov();
  const std::vector<std::uint32_t> primes{5, 7, 11, 13};
  const WalkSampler sampler(gens, primes, 4242);
  TargetSpec spec;
  spec.partition = {2};
  const auto t = build_target(spec, gens, primes);
  const std::vector<std::size_t> schedule{0, 2, 4, 8, 16, 32};
  std::vector<std::uint64_t> prev;
  for (std::size_t k = 1; k <= primes.size(); ++k) {
    const auto rep = sieve_run(sampler, t, battery_of({primes.begin(), primes.begin() + k}), schedule, 5000, 1.0);
    std::vector<std::uint64_t> hits;
    for (const auto& e : rep.estimates) hits.push_back(e.hits);
    if (!prev.empty()) {
      for (std::size_t i = 0; i < hits.size(); ++i) EXPECT_LE(hits[i], prev[i]) << k << " " << schedule[i];
    }
    prev = hits;
  }
  EXPECT_EQ(prev[0], 5000U);  // the identity is never regular semisimple
}

TEST(SieveRun, IndependentPrimesMatchProductOfDensities) {
  // Mod 5 and mod 7 the walk equidistributes on SL_2(F_5) x SL_2(F_7), so
  // events defined at different primes become independent.
  const auto gens = presets::sanov();
  const WalkSampler sampler(gens, {5, 7}, 99);
  const auto t = build_target(custom([](std::uint32_t p, const MatFp& g) {
                                return p == 5 ? g.trace() <= 1 : g.at(0, 0) == 3;
                              }),
                              gens, {5, 7});
  const std::uint64_t samples = 200000;
  const auto rep = sieve_run(sampler, t, battery_of({5, 7}), {100, 101}, samples, 1.0);
  const double expect = (t.at_prime(5).density() * t.at_prime(7).density()).convert_to<double>();
  for (const auto& e : rep.estimates) {
    const double se = std::sqrt(expect * (1 - expect) / static_cast<double>(samples));
    EXPECT_NEAR(e.estimate, expect, 2.576 * se) << e.n;
  }
}

TEST(SieveRun, CycleTypeTargetDecays) {
  const auto gens = presets::sanov();
  const auto battery = select_primes(4, 1, 5);
  const WalkSampler sampler(gens, battery.primes, 7);
  TargetSpec spec;
  spec.partition = {2};
  const auto t = build_target(spec, gens, battery.primes);
  const auto rep = sieve_run(sampler, t, battery, {0, 2, 4, 8, 16, 32, 64}, 20000, 1.0);
  EXPECT_EQ(rep.estimates.front().estimate, 1.0);
  EXPECT_LT(rep.estimates.back().estimate, rep.estimates[2].estimate);
  // Stationary value: product of the per-prime densities.
  double stationary = 1.0;
  for (const auto& pd : rep.primes) stationary *= pd.density.convert_to<double>();
  EXPECT_NEAR(rep.estimates.back().estimate, stationary, 0.015);
  EXPECT_NEAR(rep.n_threshold, std::log(4.0), 1e-15);
  for (const auto& pd : rep.primes) {
    EXPECT_GE(pd.density, Rational(0));
    EXPECT_LE(pd.density, Rational(1));
  }
}

TEST(SieveRun, DeterministicAcrossWorkers) {
  const auto gens = presets::sanov();
  const auto battery = select_primes(3, 1, 5);
  const WalkSampler sampler(gens, battery.primes, 5);
  TargetSpec spec;
  spec.kind = TargetKind::power_unipotent;
  const auto t1 = build_target(spec, gens, battery.primes, 1);
  const auto t3 = build_target(spec, gens, battery.primes, 3);
  const auto a = sieve_run(sampler, t1, battery, {1, 3, 9}, 3000, 2.0, 1);
  const auto b = sieve_run(sampler, t3, battery, {1, 3, 9}, 3000, 2.0, 4);
  EXPECT_EQ(a, b);
}

TEST(Bounds, PairwiseExamples) {
  EXPECT_NEAR(pairwise_bound(0.5, 0.01, 100), 0.16, 1e-15);
  EXPECT_NEAR(pairwise_bound(0.3, 0.0, 1000000), 3e-6 / 0.09, 1e-18);
  EXPECT_EQ(code_of([] { pairwise_bound(0.0, 0.1, 3); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([] { pairwise_bound(0.5, -0.1, 3); }), Errc::invalid_argument);
}

TEST(Bounds, PlantedPairwiseCorrelation) {
  // A shared coin C raises pairwise correlations: A_i = (C and U_i) or
  // (!C and V_i). Each instance is simulated 1000 times.
  std::mt19937_64 rng(31);
  for (int inst = 0; inst < 20; ++inst) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t n = 5 + inst;
    const double c = 0.1 * u(rng);
    const double a = 0.3 + 0.4 * u(rng);
    std::vector<std::vector<bool>> events(1000, std::vector<bool>(n));
    for (auto& row : events) {
      const bool coin = u(rng) < c;
      for (std::size_t i = 0; i < n; ++i) row[i] = coin ? u(rng) < 0.95 : u(rng) < a;
    }
    const auto st = pairwise_stats(events);
    ASSERT_GT(st.omega, 0.0);
    EXPECT_LE(st.intersection, pairwise_bound(st.omega, st.delta, n)) << inst;
    EXPECT_GE(st.delta, 0.0);
  }
}

TEST(Bounds, PairwiseStatsExact) {
  // Two events, four samples: P(A)=1/2, P(B)=1/2, P(A cap B)=1/2.
  const std::vector<std::vector<bool>> ev{{true, true}, {true, true}, {false, false}, {false, false}};
  const auto st = pairwise_stats(ev);
  EXPECT_DOUBLE_EQ(st.omega, 0.5);
  EXPECT_DOUBLE_EQ(st.delta, 0.25);
  EXPECT_DOUBLE_EQ(st.intersection, 0.5);
  EXPECT_EQ(code_of([] { pairwise_stats({{true}, {true, false}}); }), Errc::dimension_mismatch);
}

TEST(Bounds, MomentExamples) {
  const std::vector<double> constant(50, 3.5);
  const auto c = moment_check(constant, 1.0);
  EXPECT_TRUE(c.chebyshev_ok);
  EXPECT_TRUE(c.second_moment_ok);
  EXPECT_DOUBLE_EQ(c.p_below, 1.0);
  EXPECT_DOUBLE_EQ(c.mean, 3.5);

  std::mt19937_64 rng(3);
  std::bernoulli_distribution b(0.3);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = b(rng) ? 1.0 : 0.0;
  const auto m = moment_check(xs, 2.0);
  EXPECT_TRUE(m.chebyshev_ok);
  EXPECT_TRUE(m.second_moment_ok);
  EXPECT_NEAR(m.mean, 0.3, 0.02);

  EXPECT_EQ(code_of([] { moment_check(std::vector<double>{}, 2.0); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([] { moment_check(std::vector<double>{1.0}, 0.5); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([] { moment_check(std::vector<double>{-1.0}, 2.0); }), Errc::invalid_argument);
}

TEST(Bounds, MomentInequalitiesAreUniversal) {
  // Heavy tails, point masses at zero, single huge outliers.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> xs(1 + trial % 37);
    for (auto& x : xs) {
      const double r = u(rng);
      x = r < 0.4 ? 0.0 : r < 0.95 ? u(rng) : 1e6 * u(rng);
    }
    if (trial % 5 == 0) xs.back() = 1e9;
    const double t = 1.0 + 10.0 * u(rng);
    const auto m = moment_check(xs, t);
    EXPECT_TRUE(m.chebyshev_ok) << trial;
    EXPECT_TRUE(m.second_moment_ok) << trial;
  }
}

}  // namespace
}  // namespace gsieve
