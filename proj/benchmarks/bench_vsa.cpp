#include <benchmark/benchmark.h>

#include "starhd/codebook.hpp"
#include "starhd/vsa.hpp"

using namespace starhd;

namespace {

Backend backend_of(const benchmark::State& state) {
  return static_cast<Backend>(state.range(1));
}

std::size_t dim_of(const benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  return backend_of(state) == Backend::Vtb ? d : d;  // ranges are squares already
}

void args_per_backend(benchmark::internal::Benchmark* bench) {
  for (long backend : {0L, 1L, 2L}) {
    for (long dim : {2500L, 10000L, 22500L}) bench->Args({dim, backend});
  }
}

void BM_Bind(benchmark::State& state) {
  Codebook book(backend_of(state), dim_of(state), 1);
  const Hypervector x = book.generate("x");
  const Hypervector y = book.generate("y");
  for (auto _ : state) {
    Hypervector c = bind(x, y);
    benchmark::DoNotOptimize(c);
  }
  state.SetLabel(backend_name(backend_of(state)));
}
BENCHMARK(BM_Bind)->Apply(args_per_backend);

void BM_BundleAccumulate(benchmark::State& state) {
  Codebook book(backend_of(state), dim_of(state), 1);
  Hypervector acc = Hypervector::zero(book.backend(), book.dim());
  const Hypervector x = book.generate("x");
  for (auto _ : state) {
    accumulate(acc, x, 0.5);
    benchmark::DoNotOptimize(acc);
  }
  state.SetLabel(backend_name(backend_of(state)));
}
BENCHMARK(BM_BundleAccumulate)->Apply(args_per_backend);

void BM_Similarity(benchmark::State& state) {
  Codebook book(backend_of(state), dim_of(state), 1);
  const Hypervector x = book.generate("x");
  const Hypervector y = book.generate("y");
  for (auto _ : state) {
    benchmark::DoNotOptimize(similarity(x, y));
  }
  state.SetLabel(backend_name(backend_of(state)));
}
BENCHMARK(BM_Similarity)->Apply(args_per_backend);

void BM_CodebookGenerate(benchmark::State& state) {
  Codebook book(backend_of(state), dim_of(state), 1);
  long i = 0;
  for (auto _ : state) {
    Hypervector v = book.generate("tok" + std::to_string(i++));
    benchmark::DoNotOptimize(v);
  }
  state.SetLabel(backend_name(backend_of(state)));
}
BENCHMARK(BM_CodebookGenerate)->Apply(args_per_backend);

}  // namespace

BENCHMARK_MAIN();
