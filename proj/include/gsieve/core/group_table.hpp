#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gsieve/core/cayley.hpp"
#include "gsieve/core/element_key.hpp"
#include "gsieve/core/gen_set.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

template <class E>
concept GroupElement = std::copyable<E> && requires(const E& a, const E& b) {
  { a * b } -> std::convertible_to<E>;
  { a.inverse() } -> std::convertible_to<E>;
  { a.identity_like() } -> std::convertible_to<E>;
  { a.key() } -> std::convertible_to<ElementKey>;
  { a == b } -> std::convertible_to<bool>;
};

/// 8e6 elements covers SL_2(F_p) up to p = 199 and SL_3(F_p) for p <= 7.
inline constexpr std::size_t kDefaultEnumerationCap = 8'000'000;

namespace detail {

class KeyIndex {
 public:
  static constexpr ElementId kPending = std::numeric_limits<ElementId>::max();

  std::optional<ElementId> find(const ElementKey& k) const {
    if (k.packed()) {
      auto it = packed_.find(k.word);
      if (it != packed_.end()) return it->second;
    } else {
      auto it = bytes_.find(k.bytes);
      if (it != bytes_.end()) return it->second;
    }
    return std::nullopt;
  }

  /// Returns false if the key is already present.
  bool insert(const ElementKey& k, ElementId id) {
    return k.packed() ? packed_.emplace(k.word, id).second : bytes_.emplace(k.bytes, id).second;
  }

  void assign(const ElementKey& k, ElementId id) {
    if (k.packed()) {
      packed_[k.word] = id;
    } else {
      bytes_[k.bytes] = id;
    }
  }

  void reserve(std::size_t n) { packed_.reserve(n); }

 private:
  std::unordered_map<std::uint64_t, ElementId> packed_;
  std::unordered_map<std::string, ElementId> bytes_;
};

}  // namespace detail

/// A finite group enumerated by breadth-first closure from the identity.
///
/// Ids are assigned layer by layer (word length in the generators); inside a
/// layer elements are ordered by key, which for matrices is lexicographic
/// order of the row-major entries. Id 0 is always the identity. The table is
/// immutable after construction and can be shared read-only between threads.
template <GroupElement E>
class GroupTable {
 public:
  static GroupTable enumerate(const GenSet<E>& gens, std::size_t cap = kDefaultEnumerationCap) {
    require(cap >= 1, Errc::invalid_argument, "enumeration cap must be >= 1");
    GroupTable t;
    t.gens_ = gens;
    const E one = gens[0].identity_like();
    t.index_.insert(one.key(), 0);
    t.elements_.push_back(one);
    t.layer_starts_.push_back(0);

    std::size_t frontier_begin = 0;
    std::size_t frontier_end = 1;
    while (frontier_begin < frontier_end) {
      std::vector<std::pair<ElementKey, E>> next;
      for (std::size_t x = frontier_begin; x < frontier_end; ++x) {
        for (const auto& s : gens.members()) {
          E y = s * t.elements_[x];
          ElementKey k = y.key();
          if (t.index_.insert(k, detail::KeyIndex::kPending)) {
            next.emplace_back(std::move(k), std::move(y));
            if (t.elements_.size() + next.size() > cap) {
              throw CapExceeded(t.elements_.size() + next.size(), cap);
            }
          }
        }
      }
      std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      frontier_begin = t.elements_.size();
      if (!next.empty()) t.layer_starts_.push_back(frontier_begin);
      for (auto& [k, y] : next) {
        t.index_.assign(k, static_cast<ElementId>(t.elements_.size()));
        t.elements_.push_back(std::move(y));
      }
      frontier_end = t.elements_.size();
    }

    t.cayley_ = t.operator_for(gens);
    t.inverse_.resize(t.elements_.size());
    for (std::size_t x = 0; x < t.elements_.size(); ++x) {
      t.inverse_[x] = t.id_of(t.elements_[x].inverse());
    }
    return t;
  }

  std::size_t order() const noexcept { return elements_.size(); }
  ElementId identity() const noexcept { return 0; }
  const E& element(ElementId id) const { return elements_.at(id); }
  const std::vector<E>& elements() const noexcept { return elements_; }
  const GenSet<E>& generators() const noexcept { return gens_; }
  const CayleyOperator& cayley() const noexcept { return cayley_; }

  /// First id of each BFS layer; layer i holds the elements at word length i.
  const std::vector<std::size_t>& layer_starts() const noexcept { return layer_starts_; }

  std::optional<ElementId> find(const E& e) const { return index_.find(e.key()); }

  ElementId id_of(const E& e) const {
    auto id = find(e);
    require(id.has_value(), Errc::invalid_argument, "element is not in the table");
    return *id;
  }

  ElementId multiply(ElementId a, ElementId b) const { return id_of(elements_[a] * elements_[b]); }
  ElementId inverse(ElementId a) const { return inverse_[a]; }

  /// Cayley operator for another symmetric set of elements of this group.
  CayleyOperator operator_for(const GenSet<E>& gens) const {
    CayleyOperator op;
    op.order = elements_.size();
    op.identity = 0;
    op.lazy = gens.lazy();
    op.actions.reserve(gens.size());
    for (const auto& s : gens.members()) {
      std::vector<ElementId> act(elements_.size());
      for (std::size_t x = 0; x < elements_.size(); ++x) act[x] = id_of(s * elements_[x]);
      op.actions.push_back(std::move(act));
    }
    return op;
  }

  /// Re-checks closure: every generator action is a permutation of the ids and
  /// every inverse is present and involutive.
  bool verify_closed() const {
    const std::size_t n = elements_.size();
    for (const auto& act : cayley_.actions) {
      if (act.size() != n) return false;
      std::vector<bool> hit(n, false);
      for (auto y : act) {
        if (y >= n || hit[y]) return false;
        hit[y] = true;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (inverse_[x] >= n || inverse_[inverse_[x]] != x) return false;
      if (multiply(static_cast<ElementId>(x), inverse_[x]) != 0) return false;
    }
    return true;
  }

 private:
  GroupTable() = default;

  GenSet<E> gens_;
  std::vector<E> elements_;
  std::vector<std::size_t> layer_starts_;
  std::vector<ElementId> inverse_;
  detail::KeyIndex index_;
  CayleyOperator cayley_;
};

template <GroupElement E>
GroupTable<E> enumerate_group(const GenSet<E>& gens, std::size_t cap = kDefaultEnumerationCap) {
  return GroupTable<E>::enumerate(gens, cap);
}

}  // namespace gsieve
