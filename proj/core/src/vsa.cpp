#include "starhd/vsa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "starhd/errors.hpp"

namespace starhd {

namespace {

void check_same_space(const Hypervector& a, const Hypervector& b) {
  if (a.backend() != b.backend()) {
    throw ConfigError(std::string("backend mismatch: ") + backend_name(a.backend()) + " vs " +
                      backend_name(b.backend()));
  }
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "dimensionality mismatch: " << a.dim() << " vs " << b.dim();
    throw ConfigError(msg.str());
  }
}

std::size_t payload_size(Backend backend, std::size_t dim) {
  return backend == Backend::Fhrr ? 2 * dim : dim;
}

std::size_t isqrt_floor(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// out_block = sqrt(m) * M * x_block per m-sized block, with M the row-major
// m x m matrix read from `mat`. `transposed` applies M^T instead.
void vtb_apply(std::span<const double> x, std::span<const double> mat, std::size_t m,
               bool transposed, std::span<double> out) {
  const double scaling = std::sqrt(static_cast<double>(m));
  for (std::size_t block = 0; block < m; ++block) {
    const double* xb = x.data() + block * m;
    double* ob = out.data() + block * m;
    std::fill(ob, ob + m, 0.0);
    if (!transposed) {
      for (std::size_t i = 0; i < m; ++i) {
        const double* row = mat.data() + i * m;
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += row[j] * xb[j];
        ob[i] = scaling * acc;
      }
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        const double* row = mat.data() + i * m;
        const double xi = scaling * xb[i];
        for (std::size_t j = 0; j < m; ++j) ob[j] += row[j] * xi;
      }
    }
  }
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64_le(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw IoError("truncated hypervector header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::Map:
      return "map";
    case Backend::Fhrr:
      return "fhrr";
    case Backend::Vtb:
      return "vtb";
  }
  return "unknown";
}

Backend backend_from_name(const std::string& name) {
  if (name == "map" || name == "MAP") return Backend::Map;
  if (name == "fhrr" || name == "FHRR") return Backend::Fhrr;
  if (name == "vtb" || name == "VTB") return Backend::Vtb;
  throw ConfigError("unknown VSA backend: " + name);
}

bool is_perfect_square(std::size_t n) {
  const std::size_t r = isqrt_floor(n);
  return r * r == n;
}

void validate_dimensionality(Backend backend, std::size_t dim) {
  if (dim < 4) {
    std::ostringstream msg;
    msg << "dimensionality must be at least 4, got " << dim;
    throw ConfigError(msg.str());
  }
  if (backend == Backend::Vtb && !is_perfect_square(dim)) {
    std::ostringstream msg;
    msg << "the vtb backend requires a perfect-square dimensionality, got " << dim
        << " (nearest squares: " << isqrt_floor(dim) * isqrt_floor(dim) << " and "
        << (isqrt_floor(dim) + 1) * (isqrt_floor(dim) + 1) << ")";
    throw ConfigError(msg.str());
  }
}

Hypervector Hypervector::zero(Backend backend, std::size_t dim) {
  validate_dimensionality(backend, dim);
  return Hypervector(backend, dim, std::vector<double>(payload_size(backend, dim), 0.0));
}

Hypervector Hypervector::identity(Backend backend, std::size_t dim) {
  validate_dimensionality(backend, dim);
  if (backend == Backend::Vtb) throw ConfigError("vtb has no exact binding identity");
  std::vector<double> data(payload_size(backend, dim), 0.0);
  if (backend == Backend::Map) {
    std::fill(data.begin(), data.end(), 1.0);
  } else {
    for (std::size_t i = 0; i < dim; ++i) data[2 * i] = 1.0;  // phase zero
  }
  return Hypervector(backend, dim, std::move(data));
}

Hypervector Hypervector::from_components(Backend backend, std::size_t dim,
                                         std::vector<double> components) {
  validate_dimensionality(backend, dim);
  if (components.size() != payload_size(backend, dim)) {
    std::ostringstream msg;
    msg << "component payload of size " << components.size() << " does not match " << dim
        << "-dimensional " << backend_name(backend) << " layout";
    throw ConfigError(msg.str());
  }
  return Hypervector(backend, dim, std::move(components));
}

std::span<const std::complex<double>> Hypervector::phasors() const {
  if (backend_ != Backend::Fhrr) throw ConfigError("phasor view is only valid for fhrr");
  return {reinterpret_cast<const std::complex<double>*>(data_.data()), dim_};
}

bool Hypervector::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

double Hypervector::norm() const {
  double acc = 0.0;
  for (double v : data_) acc += v * v;
  return std::sqrt(acc);
}

Hypervector bind(const Hypervector& a, const Hypervector& b) {
  check_same_space(a, b);
  const std::size_t dim = a.dim();
  switch (a.backend()) {
    case Backend::Map: {
      std::vector<double> out(dim);
      auto ra = a.raw();
      auto rb = b.raw();
      for (std::size_t i = 0; i < dim; ++i) out[i] = ra[i] * rb[i];
      return Hypervector::from_components(Backend::Map, dim, std::move(out));
    }
    case Backend::Fhrr: {
      std::vector<double> out(2 * dim);
      auto pa = a.phasors();
      auto pb = b.phasors();
      for (std::size_t i = 0; i < dim; ++i) {
        const std::complex<double> p = pa[i] * pb[i];
        out[2 * i] = p.real();
        out[2 * i + 1] = p.imag();
      }
      return Hypervector::from_components(Backend::Fhrr, dim, std::move(out));
    }
    case Backend::Vtb: {
      std::vector<double> out(dim);
      vtb_apply(a.raw(), b.raw(), isqrt_floor(dim), /*transposed=*/false, out);
      return Hypervector::from_components(Backend::Vtb, dim, std::move(out));
    }
  }
  throw ConfigError("unreachable backend");
}

Hypervector unbind(const Hypervector& c, const Hypervector& b) {
  check_same_space(c, b);
  const std::size_t dim = c.dim();
  switch (c.backend()) {
    case Backend::Map:
      return bind(c, b);
    case Backend::Fhrr: {
      std::vector<double> out(2 * dim);
      auto pc = c.phasors();
      auto pb = b.phasors();
      for (std::size_t i = 0; i < dim; ++i) {
        const std::complex<double> p = pc[i] * std::conj(pb[i]);
        out[2 * i] = p.real();
        out[2 * i + 1] = p.imag();
      }
      return Hypervector::from_components(Backend::Fhrr, dim, std::move(out));
    }
    case Backend::Vtb: {
      std::vector<double> out(dim);
      vtb_apply(c.raw(), b.raw(), isqrt_floor(dim), /*transposed=*/true, out);
      return Hypervector::from_components(Backend::Vtb, dim, std::move(out));
    }
  }
  throw ConfigError("unreachable backend");
}

Hypervector bundle(const Hypervector& a, const Hypervector& b) {
  check_same_space(a, b);
  std::vector<double> out(a.raw().begin(), a.raw().end());
  auto rb = b.raw();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += rb[i];
  return Hypervector::from_components(a.backend(), a.dim(), std::move(out));
}

void accumulate(Hypervector& acc, const Hypervector& x, double w) {
  check_same_space(acc, x);
  auto dst = acc.raw_mutable();
  auto src = x.raw();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w * src[i];
}

Hypervector permute(const Hypervector& a, long long shift) {
  const std::size_t dim = a.dim();
  if (dim == 0) return a;
  const long long d = static_cast<long long>(dim);
  std::size_t offset = static_cast<std::size_t>(((shift % d) + d) % d);
  const std::size_t stride = a.backend() == Backend::Fhrr ? 2 : 1;
  auto src = a.raw();
  std::vector<double> out(src.size());
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t j = (i + offset) % dim;
    for (std::size_t k = 0; k < stride; ++k) out[j * stride + k] = src[i * stride + k];
  }
  return Hypervector::from_components(a.backend(), dim, std::move(out));
}

double similarity(const Hypervector& a, const Hypervector& b) {
  check_same_space(a, b);
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  if (a.backend() == Backend::Fhrr) {
    auto pa = a.phasors();
    auto pb = b.phasors();
    for (std::size_t i = 0; i < a.dim(); ++i) {
      dot += pa[i].real() * pb[i].real() + pa[i].imag() * pb[i].imag();
      na += std::norm(pa[i]);
      nb += std::norm(pb[i]);
    }
  } else {
    auto ra = a.raw();
    auto rb = b.raw();
    for (std::size_t i = 0; i < a.dim(); ++i) {
      dot += ra[i] * rb[i];
      na += ra[i] * ra[i];
      nb += rb[i] * rb[i];
    }
  }
  if (na == 0.0 || nb == 0.0) throw DomainError("similarity of a zero-norm hypervector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

Hypervector negate(const Hypervector& a) { return scale(a, -1.0); }

Hypervector scale(const Hypervector& a, double w) {
  std::vector<double> out(a.raw().begin(), a.raw().end());
  for (double& v : out) v *= w;
  return Hypervector::from_components(a.backend(), a.dim(), std::move(out));
}

void write_hypervector(std::ostream& out, const Hypervector& hv) {
  const auto tag = static_cast<unsigned char>(hv.backend());
  out.write(reinterpret_cast<const char*>(&tag), 1);
  write_u64_le(out, hv.dim());
  for (double v : hv.raw()) write_u64_le(out, std::bit_cast<std::uint64_t>(v));
}

Hypervector read_hypervector(std::istream& in) {
  unsigned char tag = 0;
  in.read(reinterpret_cast<char*>(&tag), 1);
  if (!in) throw IoError("truncated hypervector header");
  if (tag > 2) throw IoError("unknown backend tag in hypervector stream");
  const auto backend = static_cast<Backend>(tag);
  const std::uint64_t dim = read_u64_le(in);
  validate_dimensionality(backend, dim);
  std::vector<double> data(payload_size(backend, dim));
  for (double& v : data) v = std::bit_cast<double>(read_u64_le(in));
  if (!in) throw IoError("truncated hypervector payload");
  return Hypervector::from_components(backend, dim, std::move(data));
}

std::vector<std::uint8_t> serialize_hypervector(const Hypervector& hv) {
  std::ostringstream buf(std::ios::binary);
  write_hypervector(buf, hv);
  const std::string s = buf.str();
  return {s.begin(), s.end()};
}

}  // namespace starhd
