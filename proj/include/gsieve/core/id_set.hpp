#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "gsieve/core/cayley.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

/// Subset of [0, universe) with O(1) membership; keeps a bitset and the
/// sorted member list side by side.
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(std::size_t universe) : universe_(universe), bits_((universe + 63) / 64, 0) {}

  static IdSet full(std::size_t universe) {
    IdSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<ElementId>(i));
    return s;
  }

  template <class Range>
  static IdSet of(std::size_t universe, const Range& ids) {
    IdSet s(universe);
    for (auto id : ids) s.insert(static_cast<ElementId>(id));
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(ElementId id) const noexcept {
    return id < universe_ && ((bits_[id >> 6U] >> (id & 63U)) & 1U) != 0;
  }

  /// Returns true if the id was newly added.
  bool insert(ElementId id) {
    require(id < universe_, Errc::invalid_argument, "id outside the table");
    auto& word = bits_[id >> 6U];
    const std::uint64_t mask = std::uint64_t{1} << (id & 63U);
    if (word & mask) return false;
    word |= mask;
    ++count_;
    return true;
  }

  /// Members in increasing order.
  std::vector<ElementId> ids() const {
    std::vector<ElementId> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        out.push_back(static_cast<ElementId>(w * 64 + static_cast<std::size_t>(bit)));
        word &= word - 1;
      }
    }
    return out;
  }

  friend bool operator==(const IdSet&, const IdSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace gsieve
