#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "gsieve/approx/finite_subset.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

template <GroupElement E>
FiniteSubset<E> product_set(const FiniteSubset<E>& a, const FiniteSubset<E>& b) {
  require(&a.table() == &b.table(), Errc::table_mismatch, "subsets live in different tables");
  const auto& table = a.table();
  const auto bs = b.ids().ids();
  std::vector<E> right;
  right.reserve(bs.size());
  for (auto y : bs) right.push_back(table.element(y));
  IdSet out(table.order());
  for (auto x : a.ids().ids()) {
    const E& ex = table.element(x);
    for (const auto& ey : right) out.insert(table.id_of(ex * ey));
  }
  return FiniteSubset<E>(table, std::move(out));
}

/// A^k for k >= 1.
template <GroupElement E>
FiniteSubset<E> power_set(const FiniteSubset<E>& a, std::size_t k) {
  require(k >= 1, Errc::invalid_argument, "power needs k >= 1");
  FiniteSubset<E> acc = a;
  for (std::size_t i = 1; i < k; ++i) acc = product_set(acc, a);
  return acc;
}

/// xA for a single element id x.
template <GroupElement E>
IdSet left_translate(const FiniteSubset<E>& a, ElementId x) {
  const auto& table = a.table();
  const E& ex = table.element(x);
  IdSet out(table.order());
  for (auto y : a.ids().ids()) out.insert(table.id_of(ex * table.element(y)));
  return out;
}

/// True iff AA is contained in XA.
template <GroupElement E>
bool covers(const FiniteSubset<E>& a, const std::vector<ElementId>& x) {
  const auto aa = product_set(a, a);
  IdSet xa(a.table().order());
  for (auto g : x) {
    for (auto y : left_translate(a, g).ids()) xa.insert(y);
  }
  for (auto y : aa.ids().ids()) {
    if (!xa.contains(y)) return false;
  }
  return true;
}

struct CoverResult {
  std::size_t k_hat = 0;
  std::vector<ElementId> x;
};

/// Greedy cover of AA by left translates xA with x in AA. Each round takes the
/// translate covering the most still-uncovered elements, preferring the
/// identity and then the smaller id on ties. The result always covers AA, and
/// |X| bounds the optimal covering number from above only.
template <GroupElement E>
CoverResult greedy_cover(const FiniteSubset<E>& a) {
  require(a.symmetric(), Errc::not_symmetric, "covering needs a symmetric set");
  require(a.contains_identity(), Errc::missing_identity, "covering needs the identity in A");
  const auto& table = a.table();
  const auto aa = product_set(a, a);
  std::vector<ElementId> candidates = aa.ids().ids();
  std::stable_partition(candidates.begin(), candidates.end(),
                        [&](ElementId x) { return x == table.identity(); });
  std::vector<std::vector<ElementId>> translates;
  translates.reserve(candidates.size());
  for (auto x : candidates) {
    std::vector<ElementId> inside;
    for (auto y : left_translate(a, x).ids()) {
      if (aa.contains(y)) inside.push_back(y);
    }
    translates.push_back(std::move(inside));
  }
  IdSet covered(table.order());
  CoverResult out;
  std::vector<bool> used(candidates.size(), false);
  while (covered.size() < aa.size()) {
    std::size_t best = candidates.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      std::size_t gain = 0;
      for (auto y : translates[i]) gain += covered.contains(y) ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    require(best < candidates.size(), Errc::verification_failure, "greedy cover stalled");
    used[best] = true;
    out.x.push_back(candidates[best]);
    for (auto y : translates[best]) covered.insert(y);
  }
  out.k_hat = out.x.size();
  return out;
}

template <GroupElement E>
double tripling(const FiniteSubset<E>& a) {
  require(a.size() >= 1, Errc::invalid_argument, "tripling of the empty set");
  return static_cast<double>(power_set(a, 3).size()) / static_cast<double>(a.size());
}

/// E(A, A) = #{(a, b, c, d) in A^4 : ab = cd} = sum_x r(x)^2 with
/// r(x) = #{(a, b) : ab = x}.
template <GroupElement E>
std::uint64_t energy(const FiniteSubset<E>& a) {
  const auto& table = a.table();
  const auto ids = a.ids().ids();
  std::vector<std::uint64_t> r(table.order(), 0);
  for (auto x : ids) {
    const E& ex = table.element(x);
    for (auto y : ids) ++r[table.id_of(ex * table.element(y))];
  }
  std::uint64_t e = 0;
  for (auto v : r) e += v * v;
  return e;
}

/// |A cap V| / |A|^{dim V / dim G}.
template <GroupElement E, class Pred>
double larsen_pink_ratio(const FiniteSubset<E>& a, Pred&& in_v, unsigned dim_v, unsigned dim_g) {
  require(dim_v <= dim_g && dim_g > 0, Errc::invalid_argument, "need dim V <= dim G");
  require(a.size() >= 1, Errc::invalid_argument, "empty set");
  std::size_t hits = 0;
  for (auto x : a.ids().ids()) hits += in_v(a.table().element(x)) ? 1 : 0;
  return static_cast<double>(hits) /
         std::pow(static_cast<double>(a.size()), static_cast<double>(dim_v) / static_cast<double>(dim_g));
}

struct GrowthScan {
  std::vector<std::size_t> sizes;  ///< |A|, |A^2|, ..., |A^max_power|
  bool generates = false;          ///< <A> is the whole table
  /// log(|A^3|/|A|) / log|A|, absent once |A^3| = |G| or |A| = 1.
  std::optional<double> epsilon;
};

template <GroupElement E>
GrowthScan growth_scan(const FiniteSubset<E>& a, std::size_t max_power) {
  require(max_power >= 1 && a.size() >= 1, Errc::invalid_argument, "growth scan needs a nonempty set and k >= 1");
  const auto& table = a.table();
  GrowthScan out;
  FiniteSubset<E> acc = a;
  out.sizes.push_back(acc.size());
  std::size_t a3 = 0;
  for (std::size_t k = 2; k <= std::max<std::size_t>(max_power, 3); ++k) {
    if (acc.size() < table.order()) acc = product_set(acc, a);
    if (k <= max_power) out.sizes.push_back(acc.size());
    if (k == 3) a3 = acc.size();
  }
  if (a3 < table.order() && a.size() > 1) {
    out.epsilon = std::log(static_cast<double>(a3) / static_cast<double>(a.size())) /
                  std::log(static_cast<double>(a.size()));
  }
  // <A> by closure from the identity
  IdSet reached(table.order());
  reached.insert(table.identity());
  std::vector<ElementId> queue{table.identity()};
  const auto gens = a.ids().ids();
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const E& g = table.element(queue[i]);
    for (auto s : gens) {
      const ElementId y = table.id_of(g * table.element(s));
      if (reached.insert(y)) queue.push_back(y);
    }
  }
  out.generates = reached.size() == table.order();
  return out;
}

}  // namespace gsieve
