#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace starhd {

/// One sample: an undirected simple graph with optional integer node labels
/// and a class label. Edges are stored normalized (u < v, sorted, unique);
/// node indices are 0-based. `ordinal` is the graph's position inside its
/// dataset and keys the per-node random token space.
struct Graph {
  std::uint32_t num_nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::optional<std::vector<int>> node_labels;
  int label = 0;
  std::uint64_t ordinal = 0;

  /// Builds a graph from raw (possibly duplicated, possibly self-looping)
  /// undirected edge pairs. Self-loops are dropped, duplicates collapse.
  /// Throws DataError on an endpoint outside [0, num_nodes) or a label
  /// vector of the wrong length. `dropped_self_loops`, when given, receives
  /// the number of discarded self-loops.
  static Graph make(std::uint32_t num_nodes,
                    std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_edges,
                    std::optional<std::vector<int>> node_labels = std::nullopt, int label = 0,
                    std::size_t* dropped_self_loops = nullptr);

  std::uint32_t degree(std::uint32_t v) const;

  /// Neighbor lists in ascending node-index order.
  std::vector<std::vector<std::uint32_t>> adjacency() const;

  bool operator==(const Graph&) const = default;
};

/// A named collection of graphs plus the sorted distinct class labels.
struct Dataset {
  std::string name;
  std::vector<Graph> graphs;
  std::vector<int> class_values;

  /// Recomputes class_values from the graphs and enforces the type
  /// invariants (non-empty, labels covered). Throws DataError.
  void finalize();

  /// True when every graph carries node labels.
  bool labeled() const;
};

/// Disjoint train/test index partition of a dataset.
struct Split {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::uint64_t seed = 0;
  double train_fraction = 0.0;
};

/// Per-class seeded shuffle; the first ceil(fraction * n_c) members of each
/// class go to train, the rest to test. Deterministic for a fixed seed. A
/// single-member class goes entirely to train (with a warning on stderr).
/// Note the ceil can consume a whole small class, leaving it absent from
/// the test side. Throws ConfigError unless 0 < train_fraction < 1.
Split stratified_split(const Dataset& dataset, double train_fraction, std::uint64_t seed);

}  // namespace starhd
