#pragma once

#include <cstdint>
#include <vector>

#include "gsieve/core/gen_set.hpp"
#include "gsieve/core/group_table.hpp"
#include "gsieve/core/mat_fp.hpp"

namespace gsieve {

/// Elementary matrices 1 + e_{i,i+1} and 1 + e_{i+1,i}; they generate SL_d(F_p).
inline GenSet<MatFp> elementary_generators(const PrimeModulus& mod) {
  const std::uint32_t d = mod.d();
  std::vector<MatFp> gens;
  for (std::uint32_t i = 0; i + 1 < d; ++i) {
    for (auto [r, c] : {std::pair{i, i + 1}, std::pair{i + 1, i}}) {
      auto m = detail::SquareFp::identity(mod.p(), d);
      m.at(r, c) = 1;
      gens.push_back(MatFp::from_square(std::move(m)));
    }
  }
  return GenSet<MatFp>::symmetrized(gens);
}

/// All of SL_d(F_p), enumerated from the elementary generators.
inline GroupTable<MatFp> enumerate_sl(std::uint32_t p, std::uint32_t d, std::size_t cap = kDefaultEnumerationCap) {
  return enumerate_group(elementary_generators(PrimeModulus(p, d)), cap);
}

}  // namespace gsieve
