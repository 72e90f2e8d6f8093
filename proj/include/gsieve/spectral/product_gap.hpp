#pragma once

#include <cstdint>

#include "gsieve/core/gen_set.hpp"
#include "gsieve/core/group_table.hpp"
#include "gsieve/core/int_mat.hpp"
#include "gsieve/core/pair_element.hpp"
#include "gsieve/spectral/eigen.hpp"

namespace gsieve {

using PairMat = PairElement<MatFp, MatFp>;

struct ProductGapReport {
  std::size_t order = 0;
  SpectralReport spectral;
};

/// Image of the diagonal reduction Gamma -> SL_d(F_p1) x SL_d(F_p2), then
/// lambda_1 of its Cayley graph. Dense when the image fits the dense cap,
/// iterative otherwise.
inline ProductGapReport product_group_gap(std::uint32_t p1, std::uint32_t p2, const GenSet<IntMat>& gens,
                                          SpectralOptions opt = {},
                                          std::size_t cap = kDefaultEnumerationCap) {
  require(p1 != p2, Errc::invalid_argument, "product gap needs two distinct primes");
  const std::uint32_t d = gens[0].d();
  const PrimeModulus m1(p1, d);
  const PrimeModulus m2(p2, d);
  auto pair_gens = gens.map([&](const IntMat& g) { return PairMat(reduce_mod(g, m1), reduce_mod(g, m2)); });
  auto table = enumerate_group(pair_gens, cap);
  ProductGapReport rep;
  rep.order = table.order();
  opt.method = table.order() <= opt.dense_cap ? SpectralMethod::dense : SpectralMethod::power_iteration;
  rep.spectral = lambda1(table.cayley(), opt);
  return rep;
}

}  // namespace gsieve
