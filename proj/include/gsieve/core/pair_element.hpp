#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <utility>

#include "gsieve/core/element_key.hpp"

namespace gsieve {

/// Element of a direct product A x B with componentwise multiplication.
template <class A, class B>
class PairElement {
 public:
  PairElement(A first, B second) : first_(std::move(first)), second_(std::move(second)) {}

  const A& first() const noexcept { return first_; }
  const B& second() const noexcept { return second_; }

  PairElement operator*(const PairElement& o) const {
    return PairElement(first_ * o.first_, second_ * o.second_);
  }
  PairElement inverse() const { return PairElement(first_.inverse(), second_.inverse()); }
  PairElement identity_like() const {
    return PairElement(first_.identity_like(), second_.identity_like());
  }

  ElementKey key() const {
    ElementKey a = first_.key();
    ElementKey b = second_.key();
    if (a.packed() && b.packed() && a.word <= 0xFFFFFFFFULL && b.word <= 0xFFFFFFFFULL) {
      return ElementKey{(a.word << 32U) | b.word, {}};
    }
    ElementKey k;
    for (const auto* part : {&a, &b}) {
      for (int shift = 56; shift >= 0; shift -= 8) k.bytes.push_back(static_cast<char>((part->word >> shift) & 0xFFU));
      k.bytes += part->bytes;
      k.bytes.push_back('|');
    }
    return k;
  }

  friend bool operator==(const PairElement&, const PairElement&) = default;
  friend std::ostream& operator<<(std::ostream& os, const PairElement& e) {
    return os << '(' << e.first_ << ", " << e.second_ << ')';
  }

 private:
  A first_;
  B second_;
};

}  // namespace gsieve
