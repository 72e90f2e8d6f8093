#pragma once

#include <vector>

#include "gsieve/core/group_table.hpp"
#include "gsieve/core/id_set.hpp"

namespace gsieve {

/// Decides whether `h` is a subgroup without the |H|^2 product table: grow
/// K = <chosen elements of H> by closure and fail as soon as K leaves H. Each
/// round at least doubles |K|, so there are at most log2|H| rounds.
template <GroupElement E>
bool is_subgroup(const GroupTable<E>& table, const IdSet& h) {
  if (h.universe() != table.order() || !h.contains(table.identity())) return false;
  std::vector<ElementId> gens;
  IdSet k(table.order());
  k.insert(table.identity());
  std::vector<ElementId> members = h.ids();
  std::size_t cursor = 0;
  while (k.size() < h.size()) {
    while (k.contains(members[cursor])) ++cursor;
    gens.push_back(members[cursor]);
    // closure of <gens> under right multiplication by generators
    IdSet grown(table.order());
    grown.insert(table.identity());
    std::vector<ElementId> queue{table.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (ElementId g : gens) {
        ElementId y = table.multiply(queue[i], g);
        if (!h.contains(y)) return false;
        if (grown.insert(y)) queue.push_back(y);
      }
    }
    k = std::move(grown);
  }
  return true;
}

}  // namespace gsieve
