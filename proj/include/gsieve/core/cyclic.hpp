#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

#include "gsieve/core/element_key.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

/// Residue class in the additive group Z/n, written multiplicatively so it can
/// be enumerated and walked on like a matrix group.
class Cyclic {
 public:
  Cyclic(std::uint32_t n, std::int64_t value) : n_(n) {
    require(n >= 1, Errc::invalid_argument, "Z/n needs n >= 1");
    const auto m = static_cast<std::int64_t>(n);
    v_ = static_cast<std::uint32_t>(((value % m) + m) % m);
  }

  std::uint32_t modulus() const noexcept { return n_; }
  std::uint32_t value() const noexcept { return v_; }

  Cyclic operator*(const Cyclic& o) const { return Cyclic(n_, std::int64_t{v_} + o.v_); }
  Cyclic inverse() const { return Cyclic(n_, -std::int64_t{v_}); }
  Cyclic identity_like() const { return Cyclic(n_, 0); }
  ElementKey key() const { return ElementKey{v_, {}}; }

  friend bool operator==(const Cyclic&, const Cyclic&) = default;
  friend auto operator<=>(const Cyclic&, const Cyclic&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Cyclic& c) {
    return os << c.v_ << " mod " << c.n_;
  }

 private:
  std::uint32_t n_;
  std::uint32_t v_ = 0;
};

}  // namespace gsieve
