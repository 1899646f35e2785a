#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "starhd/vsa.hpp"

namespace starhd {

/// Deterministic, seeded token -> hypervector map. Identical
/// (seed, backend, dim, token) quadruples yield bit-identical vectors in
/// every process; the generation recipe below is therefore part of the
/// model file contract:
///
///   stream_seed = fnv1a64(token bytes) XOR seed
///   draws       = SplitMix64(stream_seed)
///   Map  : component i = +1 if draw_i has its low bit set, else -1
///   Fhrr : phase i = 2*pi * unit(draw), component i = (cos, sin)
///   Vtb  : vec of a Gram-Schmidt-orthonormalized standard-normal m x m
///          matrix, scaled by 1/sqrt(m); the derived binding transform is
///          exactly orthogonal
///
/// Distinct tokens come out quasi-orthogonal at the usual dimensionalities.
class Codebook {
 public:
  Codebook(Backend backend, std::size_t dim, std::uint64_t seed);

  Backend backend() const { return backend_; }
  std::size_t dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }

  /// Memoized lookup; generates on first request. Safe under concurrent
  /// first access to the same token (one canonical vector wins). The
  /// returned reference stays valid for the codebook's lifetime.
  const Hypervector& get(std::string_view token) const;

  /// Stateless generation of the same vector `get` would return, without
  /// memoizing. Used for one-shot tokens (per-node identities) whose
  /// universe is too large to keep.
  Hypervector generate(std::string_view token) const;

  std::size_t memoized_count() const;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  Backend backend_;
  std::size_t dim_;
  std::uint64_t seed_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, Hypervector, StringHash, std::equal_to<>> entries_;
};

}  // namespace starhd
