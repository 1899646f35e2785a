#include "starhd/codebook.hpp"

#include <cmath>
#include <numbers>

#include "starhd/detail/rng.hpp"
#include "starhd/errors.hpp"

namespace starhd {

Codebook::Codebook(Backend backend, std::size_t dim, std::uint64_t seed)
    : backend_(backend), dim_(dim), seed_(seed) {
  validate_dimensionality(backend, dim);
}

const Hypervector& Codebook::get(std::string_view token) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(token);
  if (it != entries_.end()) return it->second;
  auto [inserted, ok] = entries_.emplace(std::string(token), generate(token));
  return inserted->second;
}

Hypervector Codebook::generate(std::string_view token) const {
  detail::SplitMix64 rng(detail::token_stream_seed(seed_, token));
  switch (backend_) {
    case Backend::Map: {
      std::vector<double> data(dim_);
      for (double& v : data) v = (rng.next() & 1u) ? 1.0 : -1.0;
      return Hypervector::from_components(Backend::Map, dim_, std::move(data));
    }
    case Backend::Fhrr: {
      std::vector<double> data(2 * dim_);
      for (std::size_t i = 0; i < dim_; ++i) {
        const double phase = 2.0 * std::numbers::pi * rng.next_unit();
        data[2 * i] = std::cos(phase);
        data[2 * i + 1] = std::sin(phase);
      }
      return Hypervector::from_components(Backend::Fhrr, dim_, std::move(data));
    }
    case Backend::Vtb: {
      // Draw a standard-normal m x m matrix and orthonormalize its columns
      // (modified Gram-Schmidt). The atomic vector is vec(Q) / sqrt(m), so
      // the binding transform derived from it is exactly orthogonal: norms
      // are preserved exactly and transpose-unbinding inverts binding.
      const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dim_))));
      std::vector<double> q(dim_);
      std::size_t i = 0;
      while (i + 1 < dim_) {
        double z0, z1;
        detail::box_muller(rng, z0, z1);
        q[i++] = z0;
        q[i++] = z1;
      }
      if (i < dim_) {
        double z0, z1;
        detail::box_muller(rng, z0, z1);
        q[i] = z0;
      }
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
          double dot = 0.0;
          for (std::size_t r = 0; r < m; ++r) dot += q[r * m + c] * q[r * m + p];
          for (std::size_t r = 0; r < m; ++r) q[r * m + c] -= dot * q[r * m + p];
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < m; ++r) norm += q[r * m + c] * q[r * m + c];
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < m; ++r) q[r * m + c] /= norm;
      }
      const double scale = 1.0 / std::sqrt(static_cast<double>(m));
      for (double& v : q) v *= scale;
      return Hypervector::from_components(Backend::Vtb, dim_, std::move(q));
    }
  }
  throw ConfigError("unreachable backend");
}

std::size_t Codebook::memoized_count() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace starhd
