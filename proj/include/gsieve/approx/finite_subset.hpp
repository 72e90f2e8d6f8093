#pragma once

#include <cstdint>
#include <vector>

#include "gsieve/core/group_table.hpp"
#include "gsieve/core/id_set.hpp"
#include "gsieve/errors.hpp"
#include "gsieve/walk/rng.hpp"

namespace gsieve {

/// A subset A of an enumerated group, with its symmetry and identity flags
/// computed on construction.
template <GroupElement E>
class FiniteSubset {
 public:
  FiniteSubset(const GroupTable<E>& table, IdSet ids) : table_(&table), ids_(std::move(ids)) {
    require(ids_.universe() == table.order(), Errc::table_mismatch, "id set built for a different table");
    contains_identity_ = ids_.contains(table.identity());
    symmetric_ = true;
    for (auto x : ids_.ids()) {
      if (!ids_.contains(table.inverse(x))) {
        symmetric_ = false;
        break;
      }
    }
  }

  template <class Range>
  static FiniteSubset of_ids(const GroupTable<E>& table, const Range& ids) {
    return FiniteSubset(table, IdSet::of(table.order(), ids));
  }

  static FiniteSubset of_elements(const GroupTable<E>& table, const std::vector<E>& elems) {
    IdSet s(table.order());
    for (const auto& e : elems) s.insert(table.id_of(e));
    return FiniteSubset(table, std::move(s));
  }

  static FiniteSubset whole(const GroupTable<E>& table) { return FiniteSubset(table, IdSet::full(table.order())); }

  const GroupTable<E>& table() const noexcept { return *table_; }
  const IdSet& ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool contains(ElementId x) const noexcept { return ids_.contains(x); }
  bool symmetric() const noexcept { return symmetric_; }
  bool contains_identity() const noexcept { return contains_identity_; }

  /// With the identity and every inverse added.
  FiniteSubset symmetrized_with_identity() const {
    IdSet s = ids_;
    s.insert(table_->identity());
    for (auto x : ids_.ids()) s.insert(table_->inverse(x));
    return FiniteSubset(*table_, std::move(s));
  }

  friend bool operator==(const FiniteSubset& a, const FiniteSubset& b) {
    return a.table_ == b.table_ && a.ids_ == b.ids_;
  }

 private:
  const GroupTable<E>* table_;
  IdSet ids_;
  bool symmetric_ = false;
  bool contains_identity_ = false;
};

/// Random symmetric subset of exactly `size` elements (identity included when
/// requested), drawn from a counter-based stream keyed by seed. Elements are
/// added together with their inverses; a self-inverse element is only taken
/// when an odd number of slots is left. The draw gives up after 64 |G|
/// attempts.
template <GroupElement E>
FiniteSubset<E> random_symmetric_subset(const GroupTable<E>& table, std::size_t size, std::uint64_t seed,
                                        bool with_identity = true) {
  require(size <= table.order(), Errc::invalid_argument, "subset larger than the group");
  CounterRng rng(seed);
  IdSet s(table.order());
  if (with_identity && size > 0) s.insert(table.identity());
  const std::uint64_t budget = 64 * static_cast<std::uint64_t>(table.order()) + 64;
  for (std::uint64_t attempt = 0; s.size() < size && attempt < budget; ++attempt) {
    const auto x = static_cast<ElementId>(rng.below(table.order(), attempt, 0));
    if (!with_identity && x == table.identity()) continue;
    const ElementId xi = table.inverse(x);
    const std::size_t added = (s.contains(x) ? 0 : 1) + (xi != x && !s.contains(xi) ? 1 : 0);
    if (added == 0 || s.size() + added > size) continue;
    // an involution is only taken when it fixes the parity of what is left
    if (added == 1 && (size - s.size()) % 2 == 0) continue;
    s.insert(x);
    s.insert(xi);
  }
  require(s.size() == size, Errc::invalid_argument, "could not draw a symmetric subset of that size");
  return FiniteSubset<E>(table, std::move(s));
}

}  // namespace gsieve
