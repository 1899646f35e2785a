#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace starhd {

/// Vector symbolic architecture backing a hyperspace.
///
/// Map  - multiply/add/permute over real components, atomic vectors are +-1.
/// Fhrr - Fourier holographic reduced representation, complex phasor
///        components stored interleaved (re, im); binding adds phases.
/// Vtb  - vector-derived transformation binding over real components;
///        requires the dimensionality to be a perfect square.
enum class Backend : std::uint8_t { Map = 0, Fhrr = 1, Vtb = 2 };

const char* backend_name(Backend backend);
Backend backend_from_name(const std::string& name);

/// Throws ConfigError unless `dim` is a valid dimensionality for `backend`:
/// at least 4, and a perfect square for Vtb.
void validate_dimensionality(Backend backend, std::size_t dim);

/// True if n == m*m for some integer m.
bool is_perfect_square(std::size_t n);

/// One point in a d-dimensional hyperspace. The payload is a flat array of
/// doubles: d entries for Map/Vtb, 2d interleaved (re, im) entries for Fhrr.
/// Values are immutable through the public surface except via the mutating
/// accumulate helpers used by bundling-heavy call sites.
class Hypervector {
 public:
  Hypervector() = default;

  /// The neutral element of superposition.
  static Hypervector zero(Backend backend, std::size_t dim);

  /// Multiplicative identity of binding: all-ones for Map, unit phasors of
  /// phase zero for Fhrr. Vtb has no exact identity; requesting one throws
  /// ConfigError.
  static Hypervector identity(Backend backend, std::size_t dim);

  /// Wraps raw components (interleaved for Fhrr). Throws ConfigError when
  /// the payload size does not match the backend layout.
  static Hypervector from_components(Backend backend, std::size_t dim,
                                     std::vector<double> components);

  Backend backend() const { return backend_; }
  std::size_t dim() const { return dim_; }

  std::span<const double> raw() const { return data_; }
  std::span<double> raw_mutable() { return data_; }

  /// Fhrr payload viewed as complex numbers. Valid only for Fhrr.
  std::span<const std::complex<double>> phasors() const;

  bool is_zero() const;
  double norm() const;

  bool operator==(const Hypervector& other) const = default;

 private:
  Hypervector(Backend backend, std::size_t dim, std::vector<double> data)
      : backend_(backend), dim_(dim), data_(std::move(data)) {}

  Backend backend_ = Backend::Map;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Associative, similarity-destroying combination. Map: elementwise product
/// (self-inverse). Fhrr: elementwise complex product (phase addition).
/// Vtb: block transformation of `a` by the matrix derived from `b`, scaled
/// so random unit-norm `b` preserves the expected norm of `a`.
Hypervector bind(const Hypervector& a, const Hypervector& b);

/// Inverse of bind by `b`: Map binds again, Fhrr binds with the conjugate,
/// Vtb applies the transposed transformation (exact for atomic binders,
/// whose blocks are orthogonal; approximate otherwise).
Hypervector unbind(const Hypervector& c, const Hypervector& b);

/// Elementwise superposition. The zero vector is the neutral operand.
Hypervector bundle(const Hypervector& a, const Hypervector& b);

/// acc += w * x, the in-place form of weighted superposition.
void accumulate(Hypervector& acc, const Hypervector& x, double w = 1.0);

/// Cyclic rotation: component i moves to (i + shift) mod d. Fhrr rotates
/// whole phasors. permute(permute(x, s), -s) == x exactly.
Hypervector permute(const Hypervector& a, long long shift);

/// Cosine similarity for Map/Vtb; real part of the normalized Hermitian
/// inner product for Fhrr. Throws DomainError on a zero-norm operand.
double similarity(const Hypervector& a, const Hypervector& b);

/// Additive inverse.
Hypervector negate(const Hypervector& a);

/// Scalar multiple.
Hypervector scale(const Hypervector& a, double w);

/// Canonical byte layout: backend tag (1 byte), dimensionality (8 bytes
/// little endian), then IEEE-754 64-bit little-endian components, Fhrr
/// interleaved (re, im). Used verbatim inside model files.
void write_hypervector(std::ostream& out, const Hypervector& hv);
Hypervector read_hypervector(std::istream& in);
std::vector<std::uint8_t> serialize_hypervector(const Hypervector& hv);

}  // namespace starhd
