#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsieve/core/gen_set.hpp"
#include "gsieve/core/group_table.hpp"
#include "gsieve/core/int_mat.hpp"

namespace gsieve {

enum class ImageStatus { surjective, proper, skipped };

inline std::string to_string(ImageStatus s) {
  switch (s) {
    case ImageStatus::surjective: return "surjective";
    case ImageStatus::proper: return "proper";
    case ImageStatus::skipped: return "skipped";
  }
  return "unknown";
}

struct StrongApproxEntry {
  std::uint32_t p = 0;
  ImageStatus status = ImageStatus::skipped;
  std::size_t image_order = 0;     ///< BFS order, or the partial size when skipped
  std::uint64_t expected_order = 0;  ///< |SL_d(F_p)|
  std::string note;

  friend bool operator==(const StrongApproxEntry&, const StrongApproxEntry&) = default;
};

struct StrongApproxScan {
  BigInt m_s;  ///< max naive height over S
  std::vector<StrongApproxEntry> entries;

  friend bool operator==(const StrongApproxScan&, const StrongApproxScan&) = default;
};

inline BigInt max_height(const GenSet<IntMat>& gens) {
  BigInt m = 1;
  for (const auto& s : gens.members()) m = std::max(m, heights(s).naive);
  return m;
}

/// Compares the order of the mod-p image of <S> with |SL_d(F_p)| for each
/// prime. Surjectivity is only ever established by enumeration; a prime whose
/// image outgrows the cap is reported as skipped, and primes dividing a
/// denominator of S are skipped as well.
inline StrongApproxScan strong_approx_scan(const GenSet<IntMat>& gens, const std::vector<std::uint32_t>& primes,
                                           std::size_t cap = kDefaultEnumerationCap) {
  StrongApproxScan scan;
  scan.m_s = max_height(gens);
  const std::uint32_t d = gens[0].d();
  for (auto p : primes) {
    StrongApproxEntry e;
    e.p = p;
    e.expected_order = sl_order(p, d);
    const PrimeModulus mod(p, d);
    try {
      auto images = gens.map([&](const IntMat& g) { return reduce_mod(g, mod); });
      auto table = enumerate_group(images, cap);
      e.image_order = table.order();
      e.status = table.order() == e.expected_order ? ImageStatus::surjective : ImageStatus::proper;
    } catch (const CapExceeded& ex) {
      e.image_order = ex.partial_size;
      e.note = "image exceeds enumeration cap; surjectivity not verified";
    } catch (const Error& ex) {
      if (ex.code() != Errc::denominator_divisible_by_p) throw;
      e.note = "p divides a denominator of S";
    }
    scan.entries.push_back(std::move(e));
  }
  return scan;
}

}  // namespace gsieve
