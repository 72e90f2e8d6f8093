#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "gsieve/core/cyclic.hpp"
#include "gsieve/core/generator_io.hpp"
#include "gsieve/core/pair_element.hpp"
#include "gsieve/core/poly_fp.hpp"
#include "gsieve/core/sl_table.hpp"
#include "gsieve/core/subgroup_check.hpp"
#include "gsieve/core/subgroups.hpp"
#include "support.hpp"

namespace gsieve {
namespace {

using testing::random_sl_int;
using testing::reduce_gens;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::invalid_argument;
}

// Evaluates a polynomial at x over F_p.
std::uint64_t eval(const PolyFp& f, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) acc = (acc * x + *it) % f.p;
  return acc;
}

std::uint32_t det_x_minus(const MatFp& m, std::uint32_t x) {
  auto s = m.raw();
  for (auto& v : s.a) v = (m.p() - v) % m.p();
  for (std::uint32_t i = 0; i < m.d(); ++i) s.at(i, i) = (s.at(i, i) + x) % m.p();
  return s.det();
}

TEST(Prime, DeterministicPrimalityMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool trial = n >= 2;
    for (std::uint64_t k = 2; k * k <= n; ++k) trial = trial && n % k != 0;
    EXPECT_EQ(is_prime(n), trial) << n;
  }
  EXPECT_TRUE(is_prime(2147483647ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Prime, ModulusRejectsComposites) {
  EXPECT_EQ(code_of([] { PrimeModulus(9, 2); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([] { PrimeModulus(7, 1); }), Errc::unsupported_dimension);
  EXPECT_EQ(sl_order(5, 2), 120u);
  EXPECT_EQ(sl_order(3, 3), 5616u);
}

TEST(ReduceMod, Examples) {
  EXPECT_TRUE(reduce_mod(IntMat::identity(2), PrimeModulus(7, 2)).is_identity());
  EXPECT_TRUE(reduce_mod(IntMat::from_integers(2, {1, 2, 0, 1}), PrimeModulus(2, 2)).is_identity());
  IntMat half(2, {Rational(1), Rational(1, 2), Rational(0), Rational(1)});
  EXPECT_EQ(code_of([&] { reduce_mod(half, PrimeModulus(2, 2)); }), Errc::denominator_divisible_by_p);
  EXPECT_EQ(reduce_mod(half, PrimeModulus(5, 2)).at(0, 1), 3u);
  EXPECT_EQ(code_of([] { reduce_mod(IntMat::from_integers(2, {2, 0, 0, 1}), PrimeModulus(5, 2)); }),
            Errc::not_determinant_one);
}

TEST(ReduceMod, IsAHomomorphism) {
  std::mt19937_64 rng(11);
  const std::uint32_t primes[] = {2, 3, 5, 7, 101, 65521};
  for (int trial = 0; trial < 10000; ++trial) {
    const std::uint32_t d = trial % 4 == 0 ? 3 : 2;
    const IntMat a = random_sl_int(rng, d, 4, 9);
    const IntMat b = random_sl_int(rng, d, 4, 9);
    const PrimeModulus mod(primes[trial % 6], d);
    ASSERT_EQ(reduce_mod(a * b, mod), reduce_mod(a, mod) * reduce_mod(b, mod));
  }
}

TEST(MatFp, InverseAndKeys) {
  const PrimeModulus mod(7, 3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const MatFp m = reduce_mod(random_sl_int(rng, 3, 6, 6), mod);
    EXPECT_TRUE((m * m.inverse()).is_identity());
    EXPECT_TRUE(m.key().packed());
  }
  // 65521^9 does not fit in 64 bits
  const MatFp big = MatFp::identity(PrimeModulus(65521, 3));
  EXPECT_FALSE(big.key().packed());
}

TEST(Enumerate, Examples) {
  const PrimeModulus mod5(5, 2);
  const auto trivial = enumerate_group(GenSet<MatFp>::symmetrized({MatFp::identity(mod5)}));
  EXPECT_EQ(trivial.order(), 1u);
  EXPECT_EQ(reduce_gens(presets::elementary(), 3).size(), 4u);
  EXPECT_EQ(enumerate_group(reduce_gens(presets::elementary(), 3)).order(), 24u);
  EXPECT_EQ(enumerate_group(reduce_gens(presets::elementary(), 5)).order(), 120u);
}

TEST(Enumerate, SanovGivesFullGroupForOddPrimes) {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
    const auto t = testing::sanov_table(p);
    EXPECT_EQ(t.order(), sl_order(p, 2)) << p;
    EXPECT_TRUE(t.verify_closed());
  }
  // mod 2 the Sanov generators reduce to the identity
  EXPECT_EQ(testing::sanov_table(2).order(), 1u);
}

TEST(Enumerate, OrderingIsLayerThenLexicographic) {
  const auto t = testing::sanov_table(5);
  const auto& layers = t.layer_starts();
  ASSERT_EQ(layers.front(), 0u);
  EXPECT_EQ(layers[1], 1u);
  EXPECT_EQ(layers[2] - layers[1], 4u);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::size_t end = l + 1 < layers.size() ? layers[l + 1] : t.order();
    for (std::size_t x = layers[l] + 1; x < end; ++x) {
      EXPECT_LT(t.element(static_cast<ElementId>(x - 1)), t.element(static_cast<ElementId>(x)));
    }
  }
  const auto again = testing::sanov_table(5);
  EXPECT_EQ(t.elements(), again.elements());
}

TEST(Enumerate, CapExceededReportsPartialSize) {
  try {
    enumerate_group(reduce_gens(presets::sanov(), 7), 100);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.code(), Errc::cap_exceeded);
    EXPECT_GT(e.partial_size, 100u);
    EXPECT_LT(e.partial_size, 336u);
  }
  EXPECT_EQ(code_of([] { enumerate_group(reduce_gens(presets::sanov(), 7), 0); }), Errc::invalid_argument);
}

TEST(Enumerate, SL3Tables) {
  const auto t = enumerate_sl(3, 3);
  EXPECT_EQ(t.order(), 5616u);
  EXPECT_TRUE(t.verify_closed());
}

TEST(Enumerate, CyclicAndProducts) {
  const auto z = enumerate_group(testing::cycle_gens(12));
  EXPECT_EQ(z.order(), 12u);
  using P = PairElement<Cyclic, Cyclic>;
  const auto prod = enumerate_group(GenSet<P>::symmetrized({P(Cyclic(4, 1), Cyclic(6, 1))}));
  EXPECT_EQ(prod.order(), 12u);  // lcm(4, 6)
}

TEST(CharPoly, Examples) {
  const PrimeModulus mod5(5, 2);
  EXPECT_EQ(char_poly(MatFp::identity(mod5)).c, (std::vector<std::uint32_t>{1, 3, 1}));
  EXPECT_EQ(char_poly(MatFp::from_entries(mod5, {0, 4, 1, 0})).c, (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(CharPoly, MatchesDeterminantEvaluation) {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 13u}) {
    for (std::uint32_t d : {2u, 3u, 4u}) {
      const PrimeModulus mod(p, d);
      for (int i = 0; i < 40; ++i) {
        const MatFp m = reduce_mod(random_sl_int(rng, d, 8, 5), mod);
        const PolyFp f = char_poly(m);
        ASSERT_EQ(f.degree(), static_cast<int>(d));
        EXPECT_EQ(f.c.back(), 1u);
        EXPECT_EQ(f.c.front(), d % 2 == 0 ? 1u : p - 1);
        for (std::uint32_t x = 0; x < p; ++x) EXPECT_EQ(eval(f, x), det_x_minus(m, x));
      }
    }
  }
}

TEST(CycleType, Examples) {
  EXPECT_EQ(cycle_type(MatFp::from_entries(PrimeModulus(3, 2), {0, -1, 1, 0})), (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(cycle_type(MatFp::from_entries(PrimeModulus(5, 2), {0, -1, 1, 0})), (std::vector<std::uint32_t>{1, 1}));
  const MatFp diag = MatFp::from_entries(PrimeModulus(7, 2), {2, 0, 0, 4});
  EXPECT_EQ(cycle_type(diag), (std::vector<std::uint32_t>{1, 1}));
  EXPECT_TRUE(is_regular_semisimple(diag));
  EXPECT_FALSE(is_regular_semisimple(MatFp::identity(PrimeModulus(7, 2))));
  EXPECT_FALSE(is_regular_semisimple(MatFp::from_entries(PrimeModulus(5, 2), {1, 1, 0, 1})));
  EXPECT_EQ(code_of([] { cycle_type(MatFp::identity(PrimeModulus(7, 2))); }), Errc::not_regular_semisimple);
}

// Over F_p the number of distinct roots of a squarefree polynomial equals the
// number of degree-1 parts, which pins down every partition of d <= 3.
TEST(CycleType, AgreesWithRootCountingOnSL3) {
  for (std::uint32_t p : {2u, 3u}) {
    const auto t = enumerate_sl(p, 3);
    std::size_t regular = 0;
    for (const auto& m : t.elements()) {
      if (!is_regular_semisimple(m)) continue;
      ++regular;
      const PolyFp f = char_poly(m);
      std::uint32_t roots = 0;
      for (std::uint32_t x = 0; x < p; ++x) roots += eval(f, x) == 0 ? 1 : 0;
      const auto type = cycle_type(m);
      std::uint32_t sum = 0;
      for (auto part : type) sum += part;
      ASSERT_EQ(sum, 3u);
      const auto ones = static_cast<std::uint32_t>(std::count(type.begin(), type.end(), 1u));
      EXPECT_EQ(ones, roots);
    }
    EXPECT_GT(regular, 0u);
  }
}

TEST(PowerUnipotent, Examples) {
  EXPECT_TRUE(is_power_unipotent(MatFp::identity(PrimeModulus(5, 2))));
  EXPECT_TRUE(is_power_unipotent(MatFp::from_entries(PrimeModulus(5, 2), {1, 1, 0, 1})));
  EXPECT_FALSE(is_power_unipotent(MatFp::from_entries(PrimeModulus(7, 2), {3, 0, 0, 5})));
}

TEST(Heights, Examples) {
  const auto id = heights(IntMat::identity(3));
  EXPECT_EQ(id.naive, 1);
  EXPECT_EQ(id.log_height, 0.0);
  EXPECT_EQ(heights(IntMat::from_integers(2, {1, 2, 0, 1})).naive, 2);
  IntMat frac(2, {Rational(1), Rational(-7, 3), Rational(0), Rational(1)});
  EXPECT_EQ(heights(frac).naive, 7);
  EXPECT_GE(heights(frac).log_height, std::log(3.0));
}

TEST(Heights, ComparisonAndSubadditivity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint32_t d = trial % 2 == 0 ? 2 : 3;
    const IntMat a = random_sl_int(rng, d, 5, 7);
    const IntMat b = random_sl_int(rng, d, 5, 7);
    const auto ha = heights(a);
    const auto hb = heights(b);
    const auto hab = heights(a * b);
    const double log_naive = log_big(ha.naive);
    EXPECT_LE(log_naive, ha.log_height + 1e-12);
    EXPECT_LE(ha.log_height, std::log(static_cast<double>(d)) + d * d * log_naive + 1e-12);
    EXPECT_LE(hab.log_height, ha.log_height + hb.log_height + 1e-9);
  }
}

TEST(Heights, NaiveHeightOfProducts) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t d = 2;
    const int n = 2 + trial % 4;
    IntMat prod = IntMat::identity(d);
    double bound = n * std::log(static_cast<double>(d));
    for (int i = 0; i < n; ++i) {
      const IntMat a = random_sl_int(rng, d, 3, 4);
      prod = prod * a;
      bound += d * d * log_big(heights(a).naive);
    }
    EXPECT_LE(log_big(heights(prod).naive), bound + 1e-12);
  }
}

TEST(Subgroups, StandardSizes) {
  const auto sl7 = enumerate_sl(7, 2);
  const auto sl5 = enumerate_sl(5, 2);
  EXPECT_EQ(standard_subgroup(sl7, {SubgroupKind::torus, {}}).size(), 6u);
  EXPECT_EQ(standard_subgroup(sl5, {SubgroupKind::borel, {}}).size(), 20u);
  EXPECT_EQ(standard_subgroup(sl5, {SubgroupKind::monomial, {}}).size(), 8u);
  EXPECT_EQ(standard_subgroup(sl5, {SubgroupKind::line_stabilizer, {1, 1}}).size(), 20u);
  for (auto kind : {SubgroupKind::borel, SubgroupKind::torus, SubgroupKind::monomial}) {
    EXPECT_TRUE(is_subgroup(sl7, standard_subgroup(sl7, {kind, {}})));
  }
  const auto sl3 = enumerate_sl(3, 3);
  EXPECT_EQ(standard_subgroup(sl3, {SubgroupKind::borel, {}}).size(), 27u * 4u);
  IdSet not_closed(sl7.order());
  not_closed.insert(sl7.identity());
  not_closed.insert(1);
  EXPECT_FALSE(is_subgroup(sl7, not_closed));
}

TEST(Subgroups, UnsupportedDimension) {
  const auto sl2_4 = enumerate_group(GenSet<MatFp>::symmetrized(
      {MatFp::from_entries(PrimeModulus(2, 4), {1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1})}));
  EXPECT_EQ(code_of([&] { standard_subgroup(sl2_4, {SubgroupKind::borel, {}}); }), Errc::unsupported_dimension);
}

TEST(GeneratorIO, LoadsAndSymmetrizes) {
  const auto doc = nlohmann::json::parse(R"([[[1,2],[0,1]], [[1,0],["2/1",1]]])");
  const auto gens = parse_generators(doc);
  EXPECT_EQ(gens.size(), 4u);
  EXPECT_EQ(gens.members(), presets::sanov().members());
  const auto bad = nlohmann::json::parse(R"([[[2,0],[0,1]]])");
  EXPECT_EQ(code_of([&] { parse_generators(bad); }), Errc::not_determinant_one);
  const auto lying = nlohmann::json::parse(R"({"generators": [[[1,1],[0,1]]], "symmetric": true})");
  EXPECT_EQ(code_of([&] { parse_generators(lying); }), Errc::not_symmetric);
  const auto extra = nlohmann::json::parse(R"({"generators": [[[1,1],[0,1]]], "lazy": true})");
  EXPECT_EQ(code_of([&] { parse_generators(extra); }), Errc::config_error);
  const auto rational = nlohmann::json::parse(R"([[[1,"1/2"],[0,1]]])");
  EXPECT_FALSE(parse_generators(rational)[0].is_integral());
}

}  // namespace
}  // namespace gsieve
