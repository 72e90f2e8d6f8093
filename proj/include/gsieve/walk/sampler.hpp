#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gsieve/core/gen_set.hpp"
#include "gsieve/core/int_mat.hpp"
#include "gsieve/core/mat_fp.hpp"
#include "gsieve/core/subgroups.hpp"
#include "gsieve/errors.hpp"
#include "gsieve/walk/rng.hpp"

namespace gsieve {

/// Random walk on Gamma = <S> inside SL_d(Q), observed only through its
/// reductions modulo a fixed list of primes. A sample path multiplies on the
/// left, so after n steps the tracked residue is (s_n ... s_1) mod p; the
/// integer product itself is never formed.
class WalkSampler {
 public:
  WalkSampler(GenSet<IntMat> gens, const std::vector<std::uint32_t>& primes, std::uint64_t seed)
      : gens_(std::move(gens)), rng_(seed) {
    const std::uint32_t d = gens_[0].d();
    for (auto p : primes) {
      require(std::find(primes_.begin(), primes_.end(), p) == primes_.end(), Errc::invalid_argument,
              "prime " + std::to_string(p) + " registered twice");
      PrimeModulus mod(p, d);
      std::vector<MatFp> images;
      images.reserve(gens_.size());
      for (const auto& s : gens_.members()) images.push_back(reduce_mod(s, mod));
      primes_.push_back(p);
      moduli_.push_back(mod);
      images_.push_back(std::move(images));
    }
  }

  const GenSet<IntMat>& generators() const noexcept { return gens_; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }
  const std::vector<PrimeModulus>& moduli() const noexcept { return moduli_; }
  std::uint64_t seed() const noexcept { return rng_.seed(); }
  bool lazy() const noexcept { return gens_.lazy(); }

  std::size_t prime_index(std::uint32_t p) const {
    auto it = std::find(primes_.begin(), primes_.end(), p);
    require(it != primes_.end(), Errc::predicate_missing_prime,
            "prime " + std::to_string(p) + " is not registered with the sampler");
    return static_cast<std::size_t>(it - primes_.begin());
  }

  /// Generator chosen at step (1-based) of a sample path; -1 is a lazy hold.
  std::ptrdiff_t generator_index(std::uint64_t sample, std::uint64_t step) const {
    const std::uint64_t k = gens_.size();
    const std::uint64_t draw = rng_.below(lazy() ? 2 * k : k, sample, step);
    return draw < k ? static_cast<std::ptrdiff_t>(draw) : -1;
  }

  std::vector<std::ptrdiff_t> word(std::uint64_t sample, std::size_t n) const {
    std::vector<std::ptrdiff_t> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = generator_index(sample, i + 1);
    return w;
  }

  /// Walks one sample for max_n steps, calling visit(step, residues) after
  /// every step and once at step 0.
  template <class Visit>
  void run(std::uint64_t sample, std::size_t max_n, Visit&& visit) const {
    std::vector<MatFp> residues;
    residues.reserve(moduli_.size());
    for (const auto& mod : moduli_) residues.push_back(MatFp::identity(mod));
    visit(std::size_t{0}, static_cast<const std::vector<MatFp>&>(residues));
    for (std::size_t step = 1; step <= max_n; ++step) {
      const auto g = generator_index(sample, step);
      if (g >= 0) {
        for (std::size_t i = 0; i < residues.size(); ++i) {
          residues[i] = images_[i][static_cast<std::size_t>(g)] * residues[i];
        }
      }
      visit(step, static_cast<const std::vector<MatFp>&>(residues));
    }
  }

  std::vector<MatFp> residues(std::uint64_t sample, std::size_t n) const {
    std::vector<MatFp> out;
    run(sample, n, [&](std::size_t step, const std::vector<MatFp>& r) {
      if (step == n) out = r;
    });
    return out;
  }

 private:
  GenSet<IntMat> gens_;
  CounterRng rng_;
  std::vector<std::uint32_t> primes_;
  std::vector<PrimeModulus> moduli_;
  std::vector<std::vector<MatFp>> images_;
};

/// A set of walk positions described prime by prime. A sample hits the target
/// when its residue satisfies `contains` at every listed prime.
struct WalkTarget {
  std::string name;
  std::vector<std::uint32_t> primes;
  std::function<bool(std::size_t which, const MatFp&)> contains;
};

namespace targets {

inline WalkTarget subgroup(std::uint32_t p, const SubgroupSpec& spec, std::string name) {
  return {std::move(name), {p}, [spec](std::size_t, const MatFp& g) { return in_standard_subgroup(g, spec); }};
}

inline WalkTarget borel(std::uint32_t p) { return subgroup(p, {SubgroupKind::borel, {}}, "borel"); }

inline WalkTarget trace_value(std::uint32_t p, std::uint32_t t) {
  return {"trace=" + std::to_string(t), {p}, [t, p](std::size_t, const MatFp& g) { return g.trace() == t % p; }};
}

inline WalkTarget identity(std::uint32_t p) {
  return {"identity", {p}, [](std::size_t, const MatFp& g) { return g.is_identity(); }};
}

}  // namespace targets

}  // namespace gsieve
