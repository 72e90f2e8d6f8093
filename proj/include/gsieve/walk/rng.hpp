#pragma once

#include <cstdint>

namespace gsieve {

/// Counter-based generator: every draw is a pure function of
/// (seed, sample, step, attempt), so samples can run in any order on any
/// number of workers.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t bits(std::uint64_t sample, std::uint64_t step, std::uint64_t attempt = 0) const {
    std::uint64_t z = mix(seed_ ^ 0x243F6A8885A308D3ULL);
    z = mix(z ^ sample);
    z = mix(z ^ (step * 0x9E3779B97F4A7C15ULL));
    return mix(z ^ (attempt + 0x13198A2E03707344ULL));
  }

  /// Uniform integer in [0, bound), bound >= 1; Lemire's reduction with
  /// rejection, so exactly unbiased.
  std::uint64_t below(std::uint64_t bound, std::uint64_t sample, std::uint64_t step) const {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (std::uint64_t attempt = 0;; ++attempt) {
      const unsigned __int128 m = static_cast<unsigned __int128>(bits(sample, step, attempt)) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64U);
    }
  }

  /// Uniform double in [0, 1).
  double uniform(std::uint64_t sample, std::uint64_t step, std::uint64_t attempt = 0) const {
    return static_cast<double>(bits(sample, step, attempt) >> 11U) * 0x1.0p-53;
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
  }

  std::uint64_t seed_;
};

}  // namespace gsieve
