#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsieve/core/prime.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

struct PrimeBattery {
  std::vector<std::uint32_t> primes;
  std::uint32_t modulus = 1;  ///< primes are 1 mod this
  std::uint32_t p_min = 2;
  std::string source_note;

  std::size_t size() const noexcept { return primes.size(); }
};

inline constexpr std::uint32_t kPrimeScanCeiling = 1'000'000;

/// The n smallest primes p >= p_min with p = 1 (mod m), found with a sieve of
/// Eratosthenes that doubles its range until enough primes appear or the
/// ceiling is reached.
inline PrimeBattery select_primes(std::size_t n, std::uint32_t m, std::uint32_t p_min,
                                  std::uint32_t ceiling = kPrimeScanCeiling) {
  require(n >= 1 && m >= 1, Errc::invalid_argument, "battery needs N >= 1 and m >= 1");
  PrimeBattery b;
  b.modulus = m;
  b.p_min = p_min;
  std::uint64_t limit = std::max<std::uint64_t>(64, 2 * std::uint64_t{p_min});
  while (true) {
    limit = std::min<std::uint64_t>(limit, ceiling);
    std::vector<bool> composite(limit + 1, false);
    b.primes.clear();
    for (std::uint64_t q = 2; q <= limit && b.primes.size() < n; ++q) {
      if (composite[q]) continue;
      for (std::uint64_t k = q * q; k <= limit; k += q) composite[k] = true;
      if (q >= p_min && q % m == 1 % m) b.primes.push_back(static_cast<std::uint32_t>(q));
    }
    if (b.primes.size() >= n) break;
    require(limit < ceiling, Errc::search_bound_exceeded,
            "found " + std::to_string(b.primes.size()) + " of " + std::to_string(n) + " primes below " +
                std::to_string(ceiling));
    limit *= 2;
  }
  b.source_note = "first " + std::to_string(n) + " primes >= " + std::to_string(p_min) + " with p = 1 mod " +
                  std::to_string(m) + " (Eratosthenes to " + std::to_string(limit) + ")";
  for (auto p : b.primes) require(is_prime(p), Errc::verification_failure, "sieve produced a composite");
  return b;
}

}  // namespace gsieve
