#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "gsieve/core/mat_fp.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

/// Polynomial over F_p, coefficients lowest degree first, no trailing zeros
/// (the zero polynomial is empty).
struct PolyFp {
  std::uint32_t p = 2;
  std::vector<std::uint32_t> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  static PolyFp x(std::uint32_t p) { return PolyFp{p, {0, 1 % p}}.trimmed(); }
  static PolyFp constant(std::uint32_t p, std::uint32_t v) { return PolyFp{p, {v % p}}.trimmed(); }

  PolyFp trimmed() && {
    trim();
    return std::move(*this);
  }

  friend bool operator==(const PolyFp&, const PolyFp&) = default;
};

namespace poly {

inline PolyFp sub(const PolyFp& a, const PolyFp& b) {
  PolyFp r{a.p, a.c};
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + a.p - b.c[i]) % a.p;
  r.trim();
  return r;
}

inline PolyFp mul(const PolyFp& a, const PolyFp& b) {
  if (a.is_zero() || b.is_zero()) return PolyFp{a.p, {}};
  std::vector<std::uint64_t> acc(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t{a.c[i]} * b.c[j]) % a.p;
    }
  }
  PolyFp r{a.p, {}};
  r.c.assign(acc.begin(), acc.end());
  r.trim();
  return r;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b) {
  const std::uint32_t p = a.p;
  require(!b.is_zero(), Errc::invalid_argument, "polynomial division by zero");
  PolyFp rem{p, a.c};
  PolyFp quot{p, {}};
  if (a.degree() < b.degree()) return {quot, rem};
  quot.c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  const std::uint64_t lead_inv = detail::inv_mod(b.c.back(), p);
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    std::uint64_t coef = rem.c[static_cast<std::size_t>(k + b.degree())] * lead_inv % p;
    quot.c[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(coef);
    if (coef == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      auto& slot = rem.c[static_cast<std::size_t>(k) + j];
      slot = static_cast<std::uint32_t>((slot + p - coef * b.c[j] % p) % p);
    }
  }
  quot.trim();
  rem.trim();
  return {quot, rem};
}

inline PolyFp mod(const PolyFp& a, const PolyFp& b) { return divmod(a, b).second; }

inline PolyFp monic(PolyFp a) {
  if (a.is_zero()) return a;
  const std::uint64_t inv = detail::inv_mod(a.c.back(), a.p);
  for (auto& v : a.c) v = static_cast<std::uint32_t>(v * inv % a.p);
  return a;
}

/// Monic gcd (zero if both inputs are zero).
inline PolyFp gcd(PolyFp a, PolyFp b) {
  while (!b.is_zero()) {
    PolyFp r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

inline PolyFp derivative(const PolyFp& a) {
  PolyFp r{a.p, {}};
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    r.c.push_back(static_cast<std::uint32_t>(std::uint64_t{a.c[i]} * (i % a.p) % a.p));
  }
  r.trim();
  return r;
}

/// base^e mod m by square-and-multiply.
inline PolyFp powmod(PolyFp base, std::uint64_t e, const PolyFp& m) {
  PolyFp result = mod(PolyFp::constant(m.p, 1), m);
  base = mod(base, m);
  while (e > 0) {
    if (e & 1U) result = mod(mul(result, base), m);
    base = mod(mul(base, base), m);
    e >>= 1U;
  }
  return result;
}

}  // namespace poly

/// Characteristic polynomial det(xI - m): reduce to upper Hessenberg form by
/// similarity, then expand with the standard Hessenberg recurrence. Works over
/// every F_p (no division by small integers).
inline PolyFp char_poly(const MatFp& m) {
  const std::uint32_t p = m.p();
  const std::uint32_t n = m.d();
  if (n == 2) {
    return PolyFp{p, {1 % p, (p - m.trace()) % p, 1 % p}}.trimmed();
  }
  detail::SquareFp h = m.raw();
  for (std::uint32_t c = 0; c + 2 < n; ++c) {
    std::uint32_t pivot = c + 1;
    while (pivot < n && h.at(pivot, c) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != c + 1) {
      for (std::uint32_t j = 0; j < n; ++j) std::swap(h.at(pivot, j), h.at(c + 1, j));
      for (std::uint32_t i = 0; i < n; ++i) std::swap(h.at(i, pivot), h.at(i, c + 1));
    }
    const std::uint64_t inv = detail::inv_mod(h.at(c + 1, c), p);
    for (std::uint32_t i = c + 2; i < n; ++i) {
      const std::uint64_t f = h.at(i, c) * inv % p;
      if (f == 0) continue;
      for (std::uint32_t j = 0; j < n; ++j) {
        h.at(i, j) = static_cast<std::uint32_t>((h.at(i, j) + p - f * h.at(c + 1, j) % p) % p);
      }
      for (std::uint32_t r = 0; r < n; ++r) {
        h.at(r, c + 1) = static_cast<std::uint32_t>((h.at(r, c + 1) + f * h.at(r, i)) % p);
      }
    }
  }
  // chars[k] = char poly of the leading k x k block
  std::vector<PolyFp> chars;
  chars.push_back(PolyFp::constant(p, 1));
  for (std::uint32_t k = 1; k <= n; ++k) {
    const std::uint32_t col = k - 1;
    PolyFp next = poly::mul(PolyFp{p, {(p - h.at(col, col)) % p, 1 % p}}.trimmed(), chars[k - 1]);
    std::uint64_t sub_product = 1;
    for (std::uint32_t i = k - 1; i-- > 0;) {
      // row i, the product of subdiagonal entries h[i+1][i] ... h[k-1][k-2]
      sub_product = sub_product * h.at(i + 1, i) % p;
      const std::uint64_t coef = std::uint64_t{h.at(i, col)} * sub_product % p;
      if (coef == 0) continue;
      PolyFp term = chars[i];
      for (auto& v : term.c) v = static_cast<std::uint32_t>(v * coef % p);
      term.trim();
      next = poly::sub(next, term);
    }
    chars.push_back(std::move(next));
  }
  return chars.back();
}

/// True iff the characteristic polynomial is squarefree.
inline bool is_regular_semisimple(const MatFp& m) {
  PolyFp f = char_poly(m);
  return poly::gcd(f, poly::derivative(f)).degree() == 0;
}

/// Degrees of the irreducible factors of a monic squarefree polynomial, by
/// distinct-degree factorization. Sorted descending.
inline std::vector<std::uint32_t> factor_degrees(PolyFp f) {
  std::vector<std::uint32_t> parts;
  const std::uint32_t p = f.p;
  PolyFp h = PolyFp::x(p);
  for (std::uint32_t i = 1; f.degree() >= static_cast<int>(2 * i); ++i) {
    h = poly::powmod(h, p, f);  // h = x^{p^i} mod f
    PolyFp g = poly::gcd(f, poly::sub(h, PolyFp::x(p)));
    if (g.degree() > 0) {
      for (int k = 0; k < g.degree() / static_cast<int>(i); ++k) parts.push_back(i);
      f = poly::divmod(f, g).first;
      h = poly::mod(h, f);
    }
  }
  if (f.degree() > 0) parts.push_back(static_cast<std::uint32_t>(f.degree()));
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

/// Factorization type of the characteristic polynomial (a partition of d).
inline std::vector<std::uint32_t> cycle_type(const MatFp& m) {
  PolyFp f = char_poly(m);
  require(poly::gcd(f, poly::derivative(f)).degree() == 0, Errc::not_regular_semisimple,
          "characteristic polynomial has a repeated factor");
  return factor_degrees(std::move(f));
}

/// True iff (m^{d!} - I)^d = 0 over F_p.
inline bool is_power_unipotent(const MatFp& m) {
  std::uint64_t fact = 1;
  for (std::uint32_t i = 2; i <= m.d(); ++i) fact *= i;
  detail::SquareFp n = m.raw().pow(fact).minus_identity();
  return n.pow(m.d()).is_zero();
}

}  // namespace gsieve
