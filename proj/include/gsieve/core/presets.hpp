#pragma once

#include <string>

#include "gsieve/core/gen_set.hpp"
#include "gsieve/core/int_mat.hpp"
#include "gsieve/errors.hpp"

namespace gsieve::presets {

/// {[[1,2],[0,1]], [[1,0],[2,1]]} and inverses: a free, Zariski-dense pair in SL_2(Z).
inline GenSet<IntMat> sanov() {
  return GenSet<IntMat>::symmetrized({IntMat::from_integers(2, {1, 2, 0, 1}),
                                      IntMat::from_integers(2, {1, 0, 2, 1})});
}

/// Elementary matrix E12(1) and its inverse; lies in the Borel subgroup.
inline GenSet<IntMat> e12() { return GenSet<IntMat>::symmetrized({IntMat::from_integers(2, {1, 1, 0, 1})}); }

/// Standard generators of SL_2(Z): [[1,1],[0,1]], [[1,0],[1,1]].
inline GenSet<IntMat> elementary() {
  return GenSet<IntMat>::symmetrized({IntMat::from_integers(2, {1, 1, 0, 1}),
                                      IntMat::from_integers(2, {1, 0, 1, 1})});
}

inline GenSet<IntMat> by_name(const std::string& name) {
  if (name == "sanov") return sanov();
  if (name == "e12") return e12();
  if (name == "elementary") return elementary();
  fail(Errc::config_error, "unknown generator preset '" + name + "'");
}

}  // namespace gsieve::presets
