#include <benchmark/benchmark.h>

#include <random>

#include "starhd/encoders.hpp"
#include "starhd/graph.hpp"
#include "starhd/learner.hpp"

using namespace starhd;

namespace {

// Molecule-shaped graphs: small label alphabet, tree plus a few extra edges.
std::vector<Graph> molecule_batch(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> graphs;
  graphs.reserve(count);
  for (std::size_t g = 0; g < count; ++g) {
    const std::uint32_t n = 16 + rng() % 22;
    std::vector<int> labels(n);
    for (auto& l : labels) l = static_cast<int>(rng() % 12);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 1; v < n; ++v) edges.emplace_back(rng() % v, v);
    Graph graph = Graph::make(n, edges, labels, static_cast<int>(g % 2));
    graph.ordinal = g;
    graphs.push_back(std::move(graph));
  }
  return graphs;
}

EncoderConfig config_for(EncoderKind kind, Backend backend, std::size_t dim) {
  EncoderConfig config;
  config.kind = kind;
  config.keying = kind == EncoderKind::GaylerLevy ? NodeKeying::NodeIdRandom
                                                  : NodeKeying::NodeLabel;
  config.backend = backend;
  config.dim = dim;
  config.seed = 3;
  return config;
}

void BM_EncodeStar(benchmark::State& state) {
  const auto backend = static_cast<Backend>(state.range(0));
  const std::size_t dim = backend == Backend::Vtb ? 9801 : 10000;
  const Encoder encoder(config_for(EncoderKind::Star, backend, dim));
  const auto graphs = molecule_batch(256, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    Hypervector h = encoder.encode(graphs[i++ % graphs.size()]);
    benchmark::DoNotOptimize(h);
  }
  state.SetLabel(backend_name(backend));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_EncodeStar)->Arg(0)->Arg(1)->Arg(2);

void BM_EncodeBaselines(benchmark::State& state) {
  const auto kind = static_cast<EncoderKind>(state.range(0));
  const Encoder encoder(config_for(kind, Backend::Map, 10000));
  const auto graphs = molecule_batch(256, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    Hypervector h = encoder.encode(graphs[i++ % graphs.size()]);
    benchmark::DoNotOptimize(h);
  }
  state.SetLabel(encoder_kind_name(kind));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_EncodeBaselines)->Arg(1)->Arg(2);

void BM_TrainUpdate(benchmark::State& state) {
  const auto strategy = static_cast<Strategy>(state.range(0));
  const Encoder encoder(config_for(EncoderKind::Star, Backend::Map, 10000));
  const auto graphs = molecule_batch(256, 11);
  std::vector<Hypervector> encoded;
  encoded.reserve(graphs.size());
  for (const Graph& g : graphs) encoded.push_back(encoder.encode(g));
  AssociativeMemory memory(Backend::Map, 10000, strategy);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t j = i++ % encoded.size();
    memory.update(encoded[j], graphs[j].label);
  }
  state.SetLabel(strategy_name(strategy));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_TrainUpdate)->Arg(0)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
