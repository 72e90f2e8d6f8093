#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gsieve/approx/products.hpp"

namespace gsieve {

struct ApproxReport {
  std::size_t size_a = 0;
  std::size_t size_aa = 0;
  std::size_t size_aaa = 0;
  bool symmetric = false;
  bool contains_identity = false;
  /// Greedy covering constant; absent when A is not symmetric or lacks 1.
  std::optional<std::size_t> k_hat;
  std::vector<ElementId> cover;
  double tripling = 0.0;
  std::uint64_t energy = 0;
  std::vector<std::size_t> growth;  ///< |A^k| for k = 1..max_power
  std::optional<double> epsilon;
  bool generates = false;

  friend bool operator==(const ApproxReport&, const ApproxReport&) = default;
};

template <GroupElement E>
ApproxReport approx_report(const FiniteSubset<E>& a, std::size_t max_power = 3) {
  ApproxReport r;
  r.size_a = a.size();
  const auto aa = product_set(a, a);
  r.size_aa = aa.size();
  r.size_aaa = product_set(aa, a).size();
  r.symmetric = a.symmetric();
  r.contains_identity = a.contains_identity();
  if (r.symmetric && r.contains_identity) {
    auto cover = greedy_cover(a);
    r.k_hat = cover.k_hat;
    r.cover = std::move(cover.x);
  }
  r.tripling = static_cast<double>(r.size_aaa) / static_cast<double>(r.size_a);
  r.energy = energy(a);
  auto g = growth_scan(a, max_power);
  r.growth = std::move(g.sizes);
  r.epsilon = g.epsilon;
  r.generates = g.generates;
  return r;
}

}  // namespace gsieve
