#pragma once

#include <cstdint>
#include <string>

#include "gsieve/errors.hpp"

namespace gsieve {

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are a proven
/// witness set for every n < 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto q : small) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (auto a : small) {
    std::uint64_t x = detail::powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// A prime p together with the matrix dimension d it is used with.
class PrimeModulus {
 public:
  PrimeModulus(std::uint32_t p, std::uint32_t d) : p_(p), d_(d) {
    require(is_prime(p), Errc::invalid_argument, std::to_string(p) + " is not prime");
    require(d >= 2, Errc::unsupported_dimension, "matrix dimension must be >= 2");
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t d() const noexcept { return d_; }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint32_t p_;
  std::uint32_t d_;
};

/// |SL_d(F_p)| = p^{d(d-1)/2} * prod_{i=2..d} (p^i - 1), or 0 on 64-bit overflow.
inline std::uint64_t sl_order(std::uint64_t p, std::uint32_t d) {
  unsigned __int128 order = 1;
  for (std::uint32_t i = 0; i < d * (d - 1) / 2; ++i) order *= p;
  unsigned __int128 pi = p;
  for (std::uint32_t i = 2; i <= d; ++i) {
    pi *= p;
    order *= (pi - 1);
    if (order > UINT64_MAX) return 0;
  }
  return order > UINT64_MAX ? 0 : static_cast<std::uint64_t>(order);
}

}  // namespace gsieve
