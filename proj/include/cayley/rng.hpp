#pragma once

#include <cstdint>
#include <random>

namespace cayley {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream number `index` derived from a master seed.
/// stream(seed, i) seeds an mt19937_64 with splitmix64(seed ^ splitmix64(i)).
inline Rng stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

// Portable replacements for <random> distributions, whose algorithms are
// implementation-defined and would break cross-platform reproducibility.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return x % n;
}

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace cayley
