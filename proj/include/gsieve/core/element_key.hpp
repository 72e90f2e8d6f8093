#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace gsieve {

/// Hashable identity of a group element. Small elements pack into `word`
/// (most significant digit first, so numeric order is lexicographic order of
/// the entries); anything larger falls back to a big-endian byte string.
struct ElementKey {
  std::uint64_t word = 0;
  std::string bytes;

  bool packed() const noexcept { return bytes.empty(); }

  friend bool operator==(const ElementKey&, const ElementKey&) = default;
  friend std::strong_ordering operator<=>(const ElementKey& a, const ElementKey& b) {
    if (auto c = a.word <=> b.word; c != 0) return c;
    return a.bytes.compare(b.bytes) <=> 0;
  }
};

struct ElementKeyHash {
  std::size_t operator()(const ElementKey& k) const noexcept {
    // splitmix64 finaliser
    std::uint64_t z = k.word + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    z ^= z >> 31U;
    if (!k.bytes.empty()) z ^= std::hash<std::string>{}(k.bytes) + 0x9E3779B97F4A7C15ULL + (z << 6U);
    return static_cast<std::size_t>(z);
  }
};

}  // namespace gsieve
