#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

// Deterministic random primitives shared by the codebook, the split logic
// and the harness. These are part of the on-disk model contract: a trained
// memory is only reproducible if every implementation draws the exact same
// streams, so nothing here may depend on the standard library's
// implementation-defined distributions.

namespace starhd::detail {

// SplitMix64 (Steele, Lea & Flood). State advances by the golden-gamma
// increment; output is the finalized mix of the new state.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection; bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }
};

// FNV-1a over the token bytes. Stable across platforms; collisions merely
// alias two tokens to the same hypervector, which quasi-orthogonality
// statistics tolerate at these hash widths.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Stream seed for a (codebook seed, token) pair: FNV-1a of the token XORed
// with the codebook seed. Documented contract, do not change.
inline std::uint64_t token_stream_seed(std::uint64_t seed, std::string_view token) {
  return fnv1a64(token) ^ seed;
}

// Standard normal pair via Box-Muller from two uniform draws. log(0) is
// avoided by flushing u1 to the smallest representable draw.
inline void box_muller(SplitMix64& rng, double& z0, double& z1) {
  double u1 = rng.next_unit();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = rng.next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

// In-place Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void fisher_yates(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace starhd::detail
