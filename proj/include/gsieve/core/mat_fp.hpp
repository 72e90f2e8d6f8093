#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>

#include <boost/container/small_vector.hpp>

#include "gsieve/core/element_key.hpp"
#include "gsieve/core/prime.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

namespace detail {

using Entries = boost::container::small_vector<std::uint32_t, 9>;

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(powmod64(a, p - 2, p));
}

/// Unconstrained square matrix over F_p, row-major.
struct SquareFp {
  std::uint32_t p = 2;
  std::uint32_t d = 0;
  Entries a;

  static SquareFp zero(std::uint32_t p, std::uint32_t d) {
    SquareFp m{p, d, {}};
    m.a.assign(std::size_t{d} * d, 0);
    return m;
  }
  static SquareFp identity(std::uint32_t p, std::uint32_t d) {
    auto m = zero(p, d);
    for (std::uint32_t i = 0; i < d; ++i) m.a[i * d + i] = 1 % p;
    return m;
  }

  std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return a[i * d + j]; }
  std::uint32_t& at(std::uint32_t i, std::uint32_t j) { return a[i * d + j]; }

  SquareFp operator*(const SquareFp& o) const {
    auto r = zero(p, d);
    for (std::uint32_t i = 0; i < d; ++i) {
      for (std::uint32_t j = 0; j < d; ++j) {
        std::uint64_t acc = 0;
        for (std::uint32_t k = 0; k < d; ++k) acc += std::uint64_t{at(i, k)} * o.at(k, j) % p;
        r.at(i, j) = static_cast<std::uint32_t>(acc % p);
      }
    }
    return r;
  }

  SquareFp minus_identity() const {
    SquareFp r = *this;
    for (std::uint32_t i = 0; i < d; ++i) r.at(i, i) = (r.at(i, i) + p - 1) % p;
    return r;
  }

  bool is_zero() const {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t v) { return v == 0; });
  }

  SquareFp pow(std::uint64_t e) const {
    SquareFp result = identity(p, d);
    SquareFp base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      base = base * base;
      e >>= 1U;
    }
    return result;
  }

  std::uint32_t det() const {
    if (d == 2) {
      std::uint64_t ad = std::uint64_t{a[0]} * a[3] % p;
      std::uint64_t bc = std::uint64_t{a[1]} * a[2] % p;
      return static_cast<std::uint32_t>((ad + p - bc) % p);
    }
    SquareFp m = *this;
    std::uint64_t det = 1;
    for (std::uint32_t c = 0; c < d; ++c) {
      std::uint32_t pivot = c;
      while (pivot < d && m.at(pivot, c) == 0) ++pivot;
      if (pivot == d) return 0;
      if (pivot != c) {
        for (std::uint32_t j = 0; j < d; ++j) std::swap(m.at(pivot, j), m.at(c, j));
        det = (p - det) % p;
      }
      det = det * m.at(c, c) % p;
      std::uint64_t inv = inv_mod(m.at(c, c), p);
      for (std::uint32_t r = c + 1; r < d; ++r) {
        std::uint64_t f = m.at(r, c) * inv % p;
        if (f == 0) continue;
        for (std::uint32_t j = c; j < d; ++j) {
          m.at(r, j) = static_cast<std::uint32_t>((m.at(r, j) + p - f * m.at(c, j) % p) % p);
        }
      }
    }
    return static_cast<std::uint32_t>(det);
  }

  /// Inverse by Gauss-Jordan; caller guarantees invertibility.
  SquareFp inverse() const {
    if (d == 2) {
      std::uint64_t di = inv_mod(det(), p);
      SquareFp r = zero(p, d);
      r.a[0] = static_cast<std::uint32_t>(a[3] * di % p);
      r.a[1] = static_cast<std::uint32_t>((p - a[1]) % p * di % p);
      r.a[2] = static_cast<std::uint32_t>((p - a[2]) % p * di % p);
      r.a[3] = static_cast<std::uint32_t>(a[0] * di % p);
      return r;
    }
    SquareFp m = *this;
    SquareFp r = identity(p, d);
    for (std::uint32_t c = 0; c < d; ++c) {
      std::uint32_t pivot = c;
      while (pivot < d && m.at(pivot, c) == 0) ++pivot;
      for (std::uint32_t j = 0; j < d; ++j) {
        std::swap(m.at(pivot, j), m.at(c, j));
        std::swap(r.at(pivot, j), r.at(c, j));
      }
      std::uint64_t inv = inv_mod(m.at(c, c), p);
      for (std::uint32_t j = 0; j < d; ++j) {
        m.at(c, j) = static_cast<std::uint32_t>(m.at(c, j) * inv % p);
        r.at(c, j) = static_cast<std::uint32_t>(r.at(c, j) * inv % p);
      }
      for (std::uint32_t row = 0; row < d; ++row) {
        if (row == c) continue;
        std::uint64_t f = m.at(row, c);
        if (f == 0) continue;
        for (std::uint32_t j = 0; j < d; ++j) {
          m.at(row, j) = static_cast<std::uint32_t>((m.at(row, j) + p - f * m.at(c, j) % p) % p);
          r.at(row, j) = static_cast<std::uint32_t>((r.at(row, j) + p - f * r.at(c, j) % p) % p);
        }
      }
    }
    return r;
  }
};

}  // namespace detail

/// An element of SL_d(F_p): entries reduced into [0, p), determinant 1.
class MatFp {
 public:
  static MatFp identity(const PrimeModulus& mod) {
    return MatFp(detail::SquareFp::identity(mod.p(), mod.d()));
  }

  /// Reduces signed row-major entries mod p and checks det = 1.
  static MatFp from_entries(const PrimeModulus& mod, std::span<const std::int64_t> entries) {
    const std::uint32_t d = mod.d();
    const std::int64_t p = mod.p();
    require(entries.size() == std::size_t{d} * d, Errc::dimension_mismatch,
            "expected " + std::to_string(d * d) + " entries");
    auto m = detail::SquareFp::zero(mod.p(), d);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      m.a[i] = static_cast<std::uint32_t>(((entries[i] % p) + p) % p);
    }
    return from_square(std::move(m));
  }

  static MatFp from_entries(const PrimeModulus& mod, std::initializer_list<std::int64_t> entries) {
    return from_entries(mod, std::span<const std::int64_t>(entries.begin(), entries.size()));
  }

  static MatFp from_square(detail::SquareFp m) {
    require(m.det() == 1 % m.p, Errc::not_determinant_one, "matrix over F_p has determinant != 1");
    return MatFp(std::move(m));
  }

  std::uint32_t p() const noexcept { return m_.p; }
  std::uint32_t d() const noexcept { return m_.d; }
  PrimeModulus modulus() const { return PrimeModulus(m_.p, m_.d); }
  std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return m_.at(i, j); }
  std::span<const std::uint32_t> entries() const { return {m_.a.data(), m_.a.size()}; }
  const detail::SquareFp& raw() const noexcept { return m_; }

  std::uint32_t trace() const {
    std::uint64_t t = 0;
    for (std::uint32_t i = 0; i < m_.d; ++i) t += m_.at(i, i);
    return static_cast<std::uint32_t>(t % m_.p);
  }

  bool is_identity() const { return m_.minus_identity().is_zero(); }

  MatFp operator*(const MatFp& o) const {
    if (m_.d == 2) {
      const std::uint64_t p = m_.p;
      const auto& x = m_.a;
      const auto& y = o.m_.a;
      detail::SquareFp r{m_.p, 2, {}};
      r.a.resize(4);
      r.a[0] = static_cast<std::uint32_t>((std::uint64_t{x[0]} * y[0] + std::uint64_t{x[1]} * y[2]) % p);
      r.a[1] = static_cast<std::uint32_t>((std::uint64_t{x[0]} * y[1] + std::uint64_t{x[1]} * y[3]) % p);
      r.a[2] = static_cast<std::uint32_t>((std::uint64_t{x[2]} * y[0] + std::uint64_t{x[3]} * y[2]) % p);
      r.a[3] = static_cast<std::uint32_t>((std::uint64_t{x[2]} * y[1] + std::uint64_t{x[3]} * y[3]) % p);
      return MatFp(std::move(r));
    }
    return MatFp(m_ * o.m_);
  }

  MatFp inverse() const { return MatFp(m_.inverse()); }
  MatFp pow(std::uint64_t e) const { return MatFp(m_.pow(e)); }
  MatFp identity_like() const { return MatFp(detail::SquareFp::identity(m_.p, m_.d)); }

  ElementKey key() const {
    ElementKey k;
    if (packs()) {
      for (auto v : m_.a) k.word = k.word * m_.p + v;
    } else {
      k.bytes.reserve(m_.a.size() * 4);
      for (auto v : m_.a) {
        for (int shift = 24; shift >= 0; shift -= 8) k.bytes.push_back(static_cast<char>((v >> shift) & 0xFFU));
      }
    }
    return k;
  }

  friend bool operator==(const MatFp& a, const MatFp& b) {
    return a.m_.p == b.m_.p && a.m_.d == b.m_.d && a.m_.a == b.m_.a;
  }
  friend std::strong_ordering operator<=>(const MatFp& a, const MatFp& b) {
    return std::lexicographical_compare_three_way(a.m_.a.begin(), a.m_.a.end(), b.m_.a.begin(),
                                                  b.m_.a.end());
  }

  friend std::ostream& operator<<(std::ostream& os, const MatFp& m) {
    os << '[';
    for (std::uint32_t i = 0; i < m.d(); ++i) {
      os << (i ? ",[" : "[");
      for (std::uint32_t j = 0; j < m.d(); ++j) os << (j ? "," : "") << m.at(i, j);
      os << ']';
    }
    return os << "] mod " << m.p();
  }

 private:
  explicit MatFp(detail::SquareFp m) : m_(std::move(m)) {}

  // p^{d^2} < 2^64
  bool packs() const {
    long double bound = 1;
    for (std::size_t i = 0; i < m_.a.size(); ++i) bound *= m_.p;
    return bound < 18446744073709551615.0L;
  }

  detail::SquareFp m_;
};

}  // namespace gsieve
