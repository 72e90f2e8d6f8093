#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gsieve/core/mat_fp.hpp"
#include "gsieve/core/prime.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// ln(n) for a positive arbitrary-precision integer.
inline double log_big(const BigInt& n) {
  if (n <= 0) return -INFINITY;
  const auto bits = static_cast<long>(boost::multiprecision::msb(n));
  if (bits < 60) return std::log(n.convert_to<double>());
  BigInt top = n >> static_cast<unsigned>(bits - 52);
  return std::log(top.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
}

/// Square matrix with exact rational entries. Group elements are expected to
/// have determinant 1; that is checked where it matters (reduction, loading),
/// not on every intermediate.
class IntMat {
 public:
  IntMat() = default;

  IntMat(std::uint32_t d, std::vector<Rational> entries) : d_(d), a_(std::move(entries)) {
    require(d >= 1 && a_.size() == std::size_t{d} * d, Errc::dimension_mismatch,
            "IntMat needs d*d entries");
  }

  static IntMat identity(std::uint32_t d) {
    std::vector<Rational> e(std::size_t{d} * d, Rational(0));
    for (std::uint32_t i = 0; i < d; ++i) e[i * d + i] = 1;
    return IntMat(d, std::move(e));
  }

  static IntMat from_integers(std::uint32_t d, std::initializer_list<std::int64_t> entries) {
    std::vector<Rational> e;
    e.reserve(entries.size());
    for (auto v : entries) e.emplace_back(v);
    return IntMat(d, std::move(e));
  }

  std::uint32_t d() const noexcept { return d_; }
  const Rational& at(std::uint32_t i, std::uint32_t j) const { return a_[i * d_ + j]; }
  Rational& at(std::uint32_t i, std::uint32_t j) { return a_[i * d_ + j]; }
  const std::vector<Rational>& entries() const noexcept { return a_; }

  bool is_integral() const {
    for (const auto& x : a_) {
      if (boost::multiprecision::denominator(x) != 1) return false;
    }
    return true;
  }

  IntMat operator*(const IntMat& o) const {
    require(d_ == o.d_, Errc::dimension_mismatch, "IntMat dimensions differ");
    std::vector<Rational> r(a_.size(), Rational(0));
    for (std::uint32_t i = 0; i < d_; ++i) {
      for (std::uint32_t k = 0; k < d_; ++k) {
        const Rational& x = at(i, k);
        if (x == 0) continue;
        for (std::uint32_t j = 0; j < d_; ++j) r[i * d_ + j] += x * o.at(k, j);
      }
    }
    return IntMat(d_, std::move(r));
  }

  Rational det() const {
    std::vector<Rational> m = a_;
    Rational det = 1;
    for (std::uint32_t c = 0; c < d_; ++c) {
      std::uint32_t pivot = c;
      while (pivot < d_ && m[pivot * d_ + c] == 0) ++pivot;
      if (pivot == d_) return Rational(0);
      if (pivot != c) {
        for (std::uint32_t j = 0; j < d_; ++j) std::swap(m[pivot * d_ + j], m[c * d_ + j]);
        det = -det;
      }
      det *= m[c * d_ + c];
      for (std::uint32_t r = c + 1; r < d_; ++r) {
        if (m[r * d_ + c] == 0) continue;
        Rational f = m[r * d_ + c] / m[c * d_ + c];
        for (std::uint32_t j = c; j < d_; ++j) m[r * d_ + j] -= f * m[c * d_ + j];
      }
    }
    return det;
  }

  /// Exact inverse by Gauss-Jordan elimination.
  IntMat inverse() const {
    std::vector<Rational> m = a_;
    IntMat r = identity(d_);
    for (std::uint32_t c = 0; c < d_; ++c) {
      std::uint32_t pivot = c;
      while (pivot < d_ && m[pivot * d_ + c] == 0) ++pivot;
      require(pivot < d_, Errc::not_determinant_one, "singular matrix has no inverse");
      for (std::uint32_t j = 0; j < d_; ++j) {
        std::swap(m[pivot * d_ + j], m[c * d_ + j]);
        std::swap(r.at(pivot, j), r.at(c, j));
      }
      Rational inv = 1 / m[c * d_ + c];
      for (std::uint32_t j = 0; j < d_; ++j) {
        m[c * d_ + j] *= inv;
        r.at(c, j) *= inv;
      }
      for (std::uint32_t row = 0; row < d_; ++row) {
        if (row == c || m[row * d_ + c] == 0) continue;
        Rational f = m[row * d_ + c];
        for (std::uint32_t j = 0; j < d_; ++j) {
          m[row * d_ + j] -= f * m[c * d_ + j];
          r.at(row, j) -= f * r.at(c, j);
        }
      }
    }
    return r;
  }

  friend bool operator==(const IntMat&, const IntMat&) = default;

  friend std::ostream& operator<<(std::ostream& os, const IntMat& m) {
    os << '[';
    for (std::uint32_t i = 0; i < m.d_; ++i) {
      os << (i ? ",[" : "[");
      for (std::uint32_t j = 0; j < m.d_; ++j) os << (j ? "," : "") << m.at(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::uint32_t d_ = 0;
  std::vector<Rational> a_;
};

/// Entrywise reduction of a determinant-one rational matrix modulo p.
inline MatFp reduce_mod(const IntMat& m, const PrimeModulus& mod) {
  require(m.d() == mod.d(), Errc::dimension_mismatch, "modulus dimension differs from matrix");
  require(m.det() == 1, Errc::not_determinant_one, "input matrix does not have determinant 1");
  const BigInt p = mod.p();
  auto sq = detail::SquareFp::zero(mod.p(), mod.d());
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    const auto& x = m.entries()[i];
    BigInt num = boost::multiprecision::numerator(x) % p;
    BigInt den = boost::multiprecision::denominator(x) % p;
    if (num < 0) num += p;
    require(den != 0, Errc::denominator_divisible_by_p,
            std::to_string(mod.p()) + " divides a denominator");
    auto n32 = num.convert_to<std::uint32_t>();
    auto d32 = den.convert_to<std::uint32_t>();
    sq.a[i] = static_cast<std::uint32_t>(std::uint64_t{n32} * detail::inv_mod(d32, mod.p()) % mod.p());
  }
  return MatFp::from_square(std::move(sq));
}

struct Heights {
  BigInt naive;       ///< H(a)
  double log_height;  ///< h(a), with the infinite place bounded as below
};

/// H(a) is the largest numerator or denominator (lowest terms) among the entries.
/// h(a) sums log+ ||a||_q over the finite places, which for a rational matrix
/// equals log lcm(denominators), plus log+ of sqrt(||a||_1 ||a||_inf) at the
/// infinite place. That quantity dominates the euclidean operator norm, is
/// submultiplicative and is exact on signed permutation matrices, so h stays
/// sub-additive, H(a) <= e^h(a) <= d H(a)^{d^2}, and h(1) = 0.
inline Heights heights(const IntMat& m) {
  Heights h{BigInt(1), 0.0};
  BigInt lcm = 1;
  const std::uint32_t d = m.d();
  std::vector<Rational> row_sum(d, Rational(0));
  std::vector<Rational> col_sum(d, Rational(0));
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      const Rational& x = m.at(i, j);
      BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(x));
      BigInt den = boost::multiprecision::denominator(x);
      if (num > h.naive) h.naive = num;
      if (den > h.naive) h.naive = den;
      lcm = boost::multiprecision::lcm(lcm, den);
      Rational ax = x < 0 ? Rational(-x) : x;
      row_sum[i] += ax;
      col_sum[j] += ax;
    }
  }
  Rational norm1 = *std::max_element(col_sum.begin(), col_sum.end());
  Rational norm_inf = *std::max_element(row_sum.begin(), row_sum.end());
  Rational prod = norm1 * norm_inf;
  double infinite = 0.5 * (log_big(boost::multiprecision::numerator(prod)) -
                           log_big(boost::multiprecision::denominator(prod)));
  h.log_height = log_big(lcm) + std::max(0.0, infinite);
  return h;
}

}  // namespace gsieve
