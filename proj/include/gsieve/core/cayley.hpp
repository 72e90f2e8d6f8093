#pragma once

#include <cstdint>
#include <vector>

namespace gsieve {

using ElementId = std::uint32_t;

/// Generator action on an enumerated group: `actions[s][x]` is the id of
/// s * x. This is all the spectral and convolution code needs to know about a
/// Cayley graph.
struct CayleyOperator {
  std::size_t order = 0;
  ElementId identity = 0;
  std::vector<std::vector<ElementId>> actions;
  bool lazy = false;

  std::size_t degree() const noexcept { return actions.size(); }
};

}  // namespace gsieve
