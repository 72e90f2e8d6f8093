#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gsieve/core/cyclic.hpp"
#include "gsieve/core/group_table.hpp"
#include "gsieve/core/int_mat.hpp"
#include "gsieve/core/presets.hpp"

namespace gsieve::testing {

inline GenSet<MatFp> reduce_gens(const GenSet<IntMat>& gens, std::uint32_t p) {
  const PrimeModulus mod(p, gens[0].d());
  return gens.map([&](const IntMat& g) { return reduce_mod(g, mod); });
}

inline GroupTable<MatFp> sanov_table(std::uint32_t p, bool lazy = false) {
  return enumerate_group(reduce_gens(presets::sanov().with_lazy(lazy), p));
}

inline GenSet<Cyclic> cycle_gens(std::uint32_t n, bool lazy = false) {
  return GenSet<Cyclic>::symmetrized({Cyclic(n, 1)}, lazy);
}

inline GenSet<Cyclic> complete_gens(std::uint32_t n) {
  std::vector<Cyclic> all;
  for (std::uint32_t k = 1; k < n; ++k) all.emplace_back(n, k);
  return GenSet<Cyclic>::symmetrized(all);
}

/// Random integer matrix of determinant 1: a product of elementary matrices.
inline IntMat random_sl_int(std::mt19937_64& rng, std::uint32_t d, int factors, int max_entry) {
  std::uniform_int_distribution<int> pos(0, static_cast<int>(d) - 1);
  std::uniform_int_distribution<int> val(-max_entry, max_entry);
  IntMat m = IntMat::identity(d);
  for (int f = 0; f < factors; ++f) {
    const auto i = static_cast<std::uint32_t>(pos(rng));
    auto j = static_cast<std::uint32_t>(pos(rng));
    if (i == j) j = (j + 1) % d;
    IntMat e = IntMat::identity(d);
    e.at(i, j) = val(rng);
    m = m * e;
  }
  return m;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace gsieve::testing
