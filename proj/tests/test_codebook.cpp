#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "starhd/codebook.hpp"
#include "starhd/errors.hpp"

using namespace starhd;

TEST_CASE("codebook is deterministic per (seed, backend, dim, token)") {
  for (Backend backend : {Backend::Map, Backend::Fhrr, Backend::Vtb}) {
    CAPTURE(backend_name(backend));
    const std::size_t d = backend == Backend::Vtb ? 256 : 300;
    Codebook a(backend, d, 7);
    Codebook b(backend, d, 7);
    CHECK(a.get("C") == b.get("C"));
    CHECK(a.get("C") == a.get("C"));
    CHECK(a.generate("C") == a.get("C"));  // memoized and stateless agree
    CHECK(serialize_hypervector(a.get("C")) == serialize_hypervector(b.get("C")));

    Codebook other_seed(backend, d, 8);
    CHECK(a.get("C") != other_seed.get("C"));
    CHECK(a.get("C") != a.get("N"));
  }
}

TEST_CASE("map atomic vectors are exactly +-1") {
  Codebook book(Backend::Map, 10000, 7);
  for (double v : book.get("C").raw()) CHECK((v == 1.0 || v == -1.0));
}

TEST_CASE("fhrr atomic vectors are unit-modulus phasors") {
  Codebook book(Backend::Fhrr, 4096, 7);
  for (const auto& p : book.get("C").phasors()) {
    CHECK(std::abs(std::abs(p) - 1.0) < 1e-9);
  }
}

TEST_CASE("vtb atomic vectors are unit-norm with orthogonal blocks") {
  const std::size_t m = 32;
  Codebook book(Backend::Vtb, m * m, 7);
  const Hypervector v = book.get("C");
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // columns of the reshaped matrix are orthonormal up to the 1/sqrt(m) scale
  auto raw = v.raw();
  for (std::size_t c1 = 0; c1 < m; ++c1) {
    for (std::size_t c2 = c1; c2 < m; ++c2) {
      double dot = 0.0;
      for (std::size_t r = 0; r < m; ++r) dot += raw[r * m + c1] * raw[r * m + c2];
      CHECK(dot == doctest::Approx(c1 == c2 ? 1.0 / m : 0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("distinct tokens are quasi-orthogonal at d=10000") {
  Codebook book(Backend::Map, 10000, 7);
  std::vector<Hypervector> vectors;
  vectors.reserve(1000);
  for (int i = 0; i < 1000; ++i) vectors.push_back(book.generate("tok" + std::to_string(i)));

  std::mt19937_64 rng(99);
  std::vector<double> abs_cos;
  abs_cos.reserve(1000);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t a = rng() % vectors.size();
    std::size_t b = rng() % vectors.size();
    if (b == a) b = (b + 1) % vectors.size();
    abs_cos.push_back(std::abs(similarity(vectors[a], vectors[b])));
  }
  std::sort(abs_cos.begin(), abs_cos.end());
  CHECK(abs_cos[static_cast<std::size_t>(0.999 * abs_cos.size())] < 0.05);
}

TEST_CASE("fhrr and vtb tokens are quasi-orthogonal too") {
  for (Backend backend : {Backend::Fhrr, Backend::Vtb}) {
    CAPTURE(backend_name(backend));
    Codebook book(backend, 10000, 7);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Hypervector a = book.generate("a" + std::to_string(i));
      const Hypervector b = book.generate("b" + std::to_string(i));
      worst = std::max(worst, std::abs(similarity(a, b)));
    }
    CHECK(worst < 0.05);
  }
}

TEST_CASE("concurrent first access yields one canonical vector") {
  Codebook book(Backend::Map, 1024, 5);
  std::vector<const Hypervector*> seen(8, nullptr);
  {
    std::vector<std::jthread> threads;
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&book, &seen, t] { seen[t] = &book.get("shared-token"); });
    }
  }
  for (const Hypervector* p : seen) CHECK(p == seen[0]);
  CHECK(book.memoized_count() == 1);
}

TEST_CASE("codebook validates dimensionality") {
  CHECK_THROWS_AS(Codebook(Backend::Vtb, 1000, 1), ConfigError);
  CHECK_THROWS_AS(Codebook(Backend::Map, 2, 1), ConfigError);
}
