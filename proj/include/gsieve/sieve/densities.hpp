#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gsieve/core/group_table.hpp"
#include "gsieve/core/id_set.hpp"
#include "gsieve/core/int_mat.hpp"
#include "gsieve/core/poly_fp.hpp"
#include "gsieve/core/sl_table.hpp"

namespace gsieve {

using Partition = std::vector<std::uint32_t>;

/// Ids of the m-th powers in an enumerated group.
template <GroupElement E>
IdSet m_power_set(const GroupTable<E>& table, std::uint64_t m) {
  IdSet out(table.order());
  for (const auto& g : table.elements()) {
    E acc = g.identity_like();
    E base = g;
    for (std::uint64_t e = m; e > 0; e >>= 1U) {
      if (e & 1U) acc = acc * base;
      base = base * base;
    }
    out.insert(table.id_of(acc));
  }
  return out;
}

/// |{g^m : g in SL_d(F_p)}| / |SL_d(F_p)|.
inline Rational m_power_density(std::uint32_t p, std::uint64_t m, std::uint32_t d = 2,
                                std::size_t cap = kDefaultEnumerationCap) {
  require(m >= 1, Errc::invalid_argument, "m must be >= 1");
  const auto table = enumerate_sl(p, d, cap);
  return Rational(m_power_set(table, m).size(), table.order());
}

/// Class counts by factorization type of the characteristic polynomial;
/// elements that are not regular semisimple are counted separately.
struct CycleCensus {
  std::size_t order = 0;
  std::size_t non_regular = 0;
  std::map<Partition, std::size_t> by_type;

  Rational density(const Partition& type) const {
    auto it = by_type.find(type);
    return Rational(it == by_type.end() ? 0 : it->second, order);
  }
  Rational non_regular_density() const { return Rational(non_regular, order); }
};

inline CycleCensus cycle_census(const GroupTable<MatFp>& table) {
  CycleCensus c;
  c.order = table.order();
  for (const auto& g : table.elements()) {
    PolyFp f = char_poly(g);
    if (poly::gcd(f, poly::derivative(f)).degree() != 0) {
      ++c.non_regular;
    } else {
      ++c.by_type[factor_degrees(std::move(f))];
    }
  }
  return c;
}

inline void validate_partition(const Partition& type, std::uint32_t d) {
  std::uint32_t sum = 0;
  for (auto part : type) {
    require(part >= 1, Errc::invalid_argument, "partition parts must be positive");
    sum += part;
  }
  require(sum == d, Errc::invalid_argument, "partition does not sum to d");
}

/// Fraction of SL_d(F_p) that is regular semisimple with the given cycle type.
inline Rational cycle_type_density(std::uint32_t p, Partition type, std::uint32_t d = 2,
                                   std::size_t cap = kDefaultEnumerationCap) {
  validate_partition(type, d);
  std::sort(type.begin(), type.end(), std::greater<>());
  return cycle_census(enumerate_sl(p, d, cap)).density(type);
}

}  // namespace gsieve
