#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsieve/core/group_table.hpp"
#include "gsieve/core/id_set.hpp"
#include "gsieve/core/mat_fp.hpp"
#include "gsieve/core/prime.hpp"

namespace gsieve {

enum class SubgroupKind { borel, torus, monomial, line_stabilizer };

struct SubgroupSpec {
  SubgroupKind kind = SubgroupKind::borel;
  std::vector<std::uint32_t> point;  ///< projective point for line_stabilizer
};

namespace detail {

inline bool is_upper_triangular(const MatFp& g) {
  for (std::uint32_t i = 1; i < g.d(); ++i) {
    for (std::uint32_t j = 0; j < i; ++j) {
      if (g.at(i, j) != 0) return false;
    }
  }
  return true;
}

inline bool is_diagonal(const MatFp& g) {
  for (std::uint32_t i = 0; i < g.d(); ++i) {
    for (std::uint32_t j = 0; j < g.d(); ++j) {
      if (i != j && g.at(i, j) != 0) return false;
    }
  }
  return true;
}

inline bool is_monomial(const MatFp& g) {
  std::vector<int> col_hits(g.d(), 0);
  for (std::uint32_t i = 0; i < g.d(); ++i) {
    int row_hits = 0;
    for (std::uint32_t j = 0; j < g.d(); ++j) {
      if (g.at(i, j) != 0) {
        ++row_hits;
        ++col_hits[j];
      }
    }
    if (row_hits != 1) return false;
  }
  for (int c : col_hits) {
    if (c != 1) return false;
  }
  return true;
}

/// g v is a nonzero multiple of v.
inline bool fixes_line(const MatFp& g, const std::vector<std::uint32_t>& v) {
  const std::uint64_t p = g.p();
  std::vector<std::uint64_t> gv(g.d(), 0);
  for (std::uint32_t i = 0; i < g.d(); ++i) {
    for (std::uint32_t j = 0; j < g.d(); ++j) gv[i] = (gv[i] + std::uint64_t{g.at(i, j)} * v[j]) % p;
  }
  // parallel iff all 2x2 minors vanish
  for (std::uint32_t i = 0; i < g.d(); ++i) {
    for (std::uint32_t j = i + 1; j < g.d(); ++j) {
      if ((gv[i] * v[j] + p * p - gv[j] * v[i] % p) % p != 0) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Membership test for the standard subgroups; also usable on single elements.
inline bool in_standard_subgroup(const MatFp& g, const SubgroupSpec& spec) {
  switch (spec.kind) {
    case SubgroupKind::borel: return detail::is_upper_triangular(g);
    case SubgroupKind::torus: return detail::is_diagonal(g);
    case SubgroupKind::monomial: return detail::is_monomial(g);
    case SubgroupKind::line_stabilizer: return detail::fixes_line(g, spec.point);
  }
  return false;
}

/// Exact standard subgroup of a fully enumerated SL_d(F_p), d in {2, 3}.
inline IdSet standard_subgroup(const GroupTable<MatFp>& table, const SubgroupSpec& spec) {
  const MatFp& one = table.element(table.identity());
  const std::uint32_t d = one.d();
  require(d == 2 || d == 3, Errc::unsupported_dimension, "standard subgroups need d = 2 or 3");
  require(table.order() == sl_order(one.p(), d), Errc::invalid_argument,
          "table does not enumerate all of SL_d(F_p)");
  if (spec.kind == SubgroupKind::line_stabilizer) {
    require(spec.point.size() == d, Errc::dimension_mismatch, "line stabilizer point needs d coordinates");
    bool nonzero = false;
    for (auto c : spec.point) nonzero = nonzero || (c % one.p() != 0);
    require(nonzero, Errc::invalid_argument, "projective point must be nonzero");
  }
  SubgroupSpec reduced = spec;
  for (auto& c : reduced.point) c %= one.p();
  IdSet out(table.order());
  for (std::size_t x = 0; x < table.order(); ++x) {
    if (in_standard_subgroup(table.element(static_cast<ElementId>(x)), reduced)) {
      out.insert(static_cast<ElementId>(x));
    }
  }
  return out;
}

inline SubgroupSpec parse_subgroup_kind(const std::string& name) {
  if (name == "borel") return {SubgroupKind::borel, {}};
  if (name == "torus") return {SubgroupKind::torus, {}};
  if (name == "monomial") return {SubgroupKind::monomial, {}};
  fail(Errc::invalid_argument, "unknown subgroup kind '" + name + "'");
}

}  // namespace gsieve
