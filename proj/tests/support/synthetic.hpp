#pragma once

// Synthetic fixtures and brute-force oracles shared by the unit and
// acceptance suites. Everything here is independent of the library code it
// checks: oracles use raw arithmetic, not the implementation under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "starhd/codebook.hpp"
#include "starhd/graph.hpp"
#include "starhd/vsa.hpp"

namespace testsupport {

// Two star-motif classes over a shared noisy backbone: class 0 carries a
// K1,3 star with center label 100 / leaves 101, class 1 a K1,4 star with
// center 200 / leaves 201. Extra nodes with labels 1..5 attach randomly to
// both. Encodings of the motifs are quasi-orthogonal by construction, so a
// working pipeline separates the classes almost perfectly.
inline starhd::Dataset make_motif_dataset(std::size_t n_graphs, std::uint64_t seed,
                                          const std::string& name = "synthetic") {
  std::mt19937_64 rng(seed);
  starhd::Dataset dataset;
  dataset.name = name;
  for (std::size_t g = 0; g < n_graphs; ++g) {
    const int cls = static_cast<int>(g % 2);
    std::vector<int> labels;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    const std::uint32_t leaves = cls == 0 ? 3 : 4;
    labels.push_back(cls == 0 ? 100 : 200);
    for (std::uint32_t l = 0; l < leaves; ++l) {
      labels.push_back(cls == 0 ? 101 : 201);
      edges.emplace_back(0, l + 1);
    }
    const std::uint32_t extra = static_cast<std::uint32_t>(rng() % 5);
    for (std::uint32_t e = 0; e < extra; ++e) {
      const auto v = static_cast<std::uint32_t>(labels.size());
      labels.push_back(static_cast<int>(1 + rng() % 5));
      edges.emplace_back(static_cast<std::uint32_t>(rng() % v), v);
    }
    starhd::Graph graph = starhd::Graph::make(static_cast<std::uint32_t>(labels.size()), edges,
                                              labels, cls);
    graph.ordinal = g;
    dataset.graphs.push_back(std::move(graph));
  }
  dataset.finalize();
  return dataset;
}

// Random labeled graphs (no class structure) for invariance properties.
inline starhd::Graph random_labeled_graph(std::mt19937_64& rng, std::uint32_t min_nodes = 3,
                                          std::uint32_t max_nodes = 12, int label_alphabet = 6) {
  const std::uint32_t n = min_nodes + static_cast<std::uint32_t>(rng() % (max_nodes - min_nodes + 1));
  std::vector<int> labels(n);
  for (auto& l : labels) l = static_cast<int>(rng() % label_alphabet);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t v = 1; v < n; ++v) {
    edges.emplace_back(static_cast<std::uint32_t>(rng() % v), v);  // spanning tree
  }
  const std::uint32_t extra = static_cast<std::uint32_t>(rng() % (n / 2 + 1));
  for (std::uint32_t e = 0; e < extra; ++e) {
    const auto a = static_cast<std::uint32_t>(rng() % n);
    const auto b = static_cast<std::uint32_t>(rng() % n);
    if (a != b) edges.emplace_back(a, b);
  }
  return starhd::Graph::make(n, edges, labels, 0);
}

// Renames node indices by `perm` (perm[old] = new), keeping labels attached.
inline starhd::Graph relabel_nodes(const starhd::Graph& graph,
                                   const std::vector<std::uint32_t>& perm) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(graph.edges.size());
  for (auto [u, v] : graph.edges) edges.emplace_back(perm[u], perm[v]);
  std::vector<int> labels(graph.num_nodes);
  for (std::uint32_t v = 0; v < graph.num_nodes; ++v) {
    labels[perm[v]] = (*graph.node_labels)[v];
  }
  starhd::Graph out = starhd::Graph::make(graph.num_nodes, edges, labels, graph.label);
  out.ordinal = graph.ordinal;
  return out;
}

// Linearly separable hypervector samples: two anchor directions plus scaled
// quasi-orthogonal noise.
inline std::vector<std::pair<starhd::Hypervector, int>> make_cluster_samples(
    const starhd::Codebook& codebook, std::size_t count, double noise, std::uint64_t seed) {
  std::vector<std::pair<starhd::Hypervector, int>> samples;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const int cls = static_cast<int>(rng() % 2);
    starhd::Hypervector h = codebook.generate("anchor:" + std::to_string(cls));
    starhd::accumulate(h, codebook.generate("noise:" + std::to_string(i)), noise);
    samples.emplace_back(std::move(h), cls);
  }
  return samples;
}

// O(n^2) pairwise AUC oracle: mean over positive/negative pairs of
// 1[s_p > s_n] + 0.5 * 1[s_p == s_n].
inline double auc_pairwise(const std::vector<double>& scores,
                           const std::vector<bool>& is_positive) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t p = 0; p < scores.size(); ++p) {
    if (!is_positive[p]) continue;
    for (std::size_t q = 0; q < scores.size(); ++q) {
      if (is_positive[q]) continue;
      ++pairs;
      if (scores[p] > scores[q]) wins += 1.0;
      else if (scores[p] == scores[q]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

}  // namespace testsupport
