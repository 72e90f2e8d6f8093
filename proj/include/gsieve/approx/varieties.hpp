#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gsieve/core/mat_fp.hpp"
#include "gsieve/core/subgroups.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

/// A subvariety of SL_d given by a decidable membership test on F_p-points.
struct Variety {
  std::string name;
  unsigned dim = 0;
  std::function<bool(const MatFp&)> contains;
};

inline unsigned sl_dimension(std::uint32_t d) { return d * d - 1; }

namespace varieties {

inline Variety diagonal(std::uint32_t d) {
  return {"diagonal", d - 1, [](const MatFp& g) { return detail::is_diagonal(g); }};
}

/// Upper triangular with unit diagonal.
inline Variety upper_unipotent(std::uint32_t d) {
  return {"upper_unipotent", d * (d - 1) / 2, [](const MatFp& g) {
            if (!detail::is_upper_triangular(g)) return false;
            for (std::uint32_t i = 0; i < g.d(); ++i) {
              if (g.at(i, i) != 1) return false;
            }
            return true;
          }};
}

/// (g - 1)^d = 0.
inline Variety unipotent(std::uint32_t d) {
  return {"unipotent", d * (d - 1), [](const MatFp& g) { return g.raw().minus_identity().pow(g.d()).is_zero(); }};
}

/// tr g = t, a hypersurface.
inline Variety trace_value(std::uint32_t d, std::uint32_t t) {
  return {"trace=" + std::to_string(t), sl_dimension(d) - 1,
          [t](const MatFp& g) { return g.trace() == t % g.p(); }};
}

/// Stabilizer of the line through `point`, a parabolic of dimension d^2 - d.
inline Variety fixed_line(std::vector<std::uint32_t> point) {
  const auto d = static_cast<std::uint32_t>(point.size());
  return {"fixed_line", d * d - d, [point](const MatFp& g) {
            std::vector<std::uint32_t> v = point;
            for (auto& c : v) c %= g.p();
            return detail::fixes_line(g, v);
          }};
}

inline Variety whole(std::uint32_t d) {
  return {"whole", sl_dimension(d), [](const MatFp&) { return true; }};
}

}  // namespace varieties

}  // namespace gsieve
