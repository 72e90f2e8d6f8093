#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsieve/core/gen_set.hpp"
#include "gsieve/core/group_table.hpp"
#include "gsieve/core/id_set.hpp"
#include "gsieve/core/int_mat.hpp"
#include "gsieve/core/poly_fp.hpp"
#include "gsieve/sieve/densities.hpp"
#include "gsieve/util/parallel.hpp"

namespace gsieve {

enum class TargetKind { m_power, missing_cycle_type, trace_value, power_unipotent, custom };

inline std::string to_string(TargetKind k) {
  switch (k) {
    case TargetKind::m_power: return "m_power";
    case TargetKind::missing_cycle_type: return "missing_cycle_type";
    case TargetKind::trace_value: return "trace_value";
    case TargetKind::power_unipotent: return "power_unipotent";
    case TargetKind::custom: return "custom";
  }
  return "unknown";
}

/// Which residues count as possibly coming from Z at a single prime.
///   m_power: g is an m-th power;
///   missing_cycle_type: g is not regular semisimple of the given type;
///   trace_value: tr g = t;
///   power_unipotent: g^{d!} is unipotent;
///   custom: a caller-supplied test.
struct TargetSpec {
  TargetKind kind = TargetKind::missing_cycle_type;
  std::uint64_t m = 2;
  Partition partition{2};
  std::uint32_t trace = 0;
  std::string custom_name;
  std::function<bool(std::uint32_t p, const MatFp&)> custom;

  std::string name() const {
    switch (kind) {
      case TargetKind::m_power: return "m_power(" + std::to_string(m) + ")";
      case TargetKind::missing_cycle_type: {
        std::string s = "missing_cycle_type(";
        for (std::size_t i = 0; i < partition.size(); ++i) s += (i ? "," : "") + std::to_string(partition[i]);
        return s + ")";
      }
      case TargetKind::trace_value: return "trace_value(" + std::to_string(trace) + ")";
      case TargetKind::power_unipotent: return "power_unipotent";
      case TargetKind::custom: return custom_name.empty() ? "custom" : custom_name;
    }
    return "unknown";
  }
};

/// Excluded set at one prime: a bitset over the elements of the mod-p image,
/// indexed by the rank of each element's packed key. Lookup is a binary
/// search, so no element table has to stay resident during sampling.
struct PrimeExclusion {
  std::uint32_t p = 0;
  std::size_t order = 0;            ///< |image of Gamma mod p|
  std::uint64_t expected_order = 0;  ///< |SL_d(F_p)|
  std::vector<std::uint64_t> keys;   ///< sorted packed keys of the image
  IdSet excluded;

  bool surjective() const noexcept { return order == expected_order; }
  Rational density() const { return Rational(excluded.size(), order); }

  std::optional<std::size_t> rank(const MatFp& g) const {
    const ElementKey k = g.key();
    if (!k.packed()) return std::nullopt;
    auto it = std::lower_bound(keys.begin(), keys.end(), k.word);
    if (it == keys.end() || *it != k.word) return std::nullopt;
    return static_cast<std::size_t>(it - keys.begin());
  }

  bool contains(const MatFp& g) const {
    auto r = rank(g);
    return r.has_value() && excluded.contains(static_cast<ElementId>(*r));
  }
};

class TargetPredicate {
 public:
  TargetPredicate(TargetSpec spec, std::vector<PrimeExclusion> per_prime)
      : spec_(std::move(spec)), per_prime_(std::move(per_prime)) {}

  const TargetSpec& spec() const noexcept { return spec_; }
  std::string name() const { return spec_.name(); }
  const std::vector<PrimeExclusion>& per_prime() const noexcept { return per_prime_; }

  const PrimeExclusion& at_prime(std::uint32_t p) const {
    for (const auto& e : per_prime_) {
      if (e.p == p) return e;
    }
    fail(Errc::predicate_missing_prime, "target has no excluded set for p = " + std::to_string(p));
  }

 private:
  TargetSpec spec_;
  std::vector<PrimeExclusion> per_prime_;
};

namespace detail {

inline IdSet excluded_ids(const GroupTable<MatFp>& table, const TargetSpec& spec, std::uint32_t p) {
  IdSet out(table.order());
  if (spec.kind == TargetKind::m_power) return m_power_set(table, spec.m);
  for (std::size_t x = 0; x < table.order(); ++x) {
    const MatFp& g = table.element(static_cast<ElementId>(x));
    bool hit = false;
    switch (spec.kind) {
      case TargetKind::missing_cycle_type: {
        PolyFp f = char_poly(g);
        hit = poly::gcd(f, poly::derivative(f)).degree() != 0 || factor_degrees(std::move(f)) != spec.partition;
        break;
      }
      case TargetKind::trace_value: hit = g.trace() == spec.trace % p; break;
      case TargetKind::power_unipotent: hit = is_power_unipotent(g); break;
      case TargetKind::custom: hit = spec.custom(p, g); break;
      case TargetKind::m_power: break;
    }
    if (hit) out.insert(static_cast<ElementId>(x));
  }
  return out;
}

}  // namespace detail

/// Enumerates the image of <S> modulo each prime and records the excluded set
/// there. Primes are processed in parallel; each result depends only on its
/// prime.
inline TargetPredicate build_target(TargetSpec spec, const GenSet<IntMat>& gens,
                                    const std::vector<std::uint32_t>& primes, unsigned threads = 1,
                                    std::size_t cap = kDefaultEnumerationCap) {
  const std::uint32_t d = gens[0].d();
  if (spec.kind == TargetKind::missing_cycle_type) {
    validate_partition(spec.partition, d);
    std::sort(spec.partition.begin(), spec.partition.end(), std::greater<>());
  }
  require(spec.kind != TargetKind::m_power || spec.m >= 2, Errc::invalid_argument, "m_power target needs m >= 2");
  require(spec.kind != TargetKind::custom || static_cast<bool>(spec.custom), Errc::invalid_argument,
          "custom target needs a predicate");
  std::vector<PrimeExclusion> out(primes.size());
  if (threads == 0) threads = default_threads();
  const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, primes.size())));
  run_workers(workers, [&](unsigned w) {
    for (std::size_t i = w; i < primes.size(); i += workers) {
      const std::uint32_t p = primes[i];
      const PrimeModulus mod(p, d);
      auto table = enumerate_group(gens.map([&](const IntMat& g) { return reduce_mod(g, mod); }), cap);
      IdSet by_id = detail::excluded_ids(table, spec, p);
      PrimeExclusion e;
      e.p = p;
      e.order = table.order();
      e.expected_order = sl_order(p, d);
      std::vector<std::pair<std::uint64_t, ElementId>> ranked;
      ranked.reserve(table.order());
      for (std::size_t x = 0; x < table.order(); ++x) {
        const ElementKey k = table.element(static_cast<ElementId>(x)).key();
        require(k.packed(), Errc::invalid_argument, "excluded sets need packed element keys");
        ranked.emplace_back(k.word, static_cast<ElementId>(x));
      }
      std::sort(ranked.begin(), ranked.end());
      e.keys.reserve(ranked.size());
      e.excluded = IdSet(ranked.size());
      for (std::size_t r = 0; r < ranked.size(); ++r) {
        e.keys.push_back(ranked[r].first);
        if (by_id.contains(ranked[r].second)) e.excluded.insert(static_cast<ElementId>(r));
      }
      out[i] = std::move(e);
    }
  });
  return TargetPredicate(std::move(spec), std::move(out));
}

}  // namespace gsieve
