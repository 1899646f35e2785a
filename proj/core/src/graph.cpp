#include "starhd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include "starhd/detail/rng.hpp"
#include "starhd/errors.hpp"

namespace starhd {

Graph Graph::make(std::uint32_t num_nodes,
                  std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_edges,
                  std::optional<std::vector<int>> node_labels, int label,
                  std::size_t* dropped_self_loops) {
  Graph g;
  g.num_nodes = num_nodes;
  g.label = label;
  std::size_t self_loops = 0;
  g.edges.reserve(raw_edges.size());
  for (auto [u, v] : raw_edges) {
    if (u >= num_nodes || v >= num_nodes) {
      std::ostringstream msg;
      msg << "edge endpoint (" << u << ", " << v << ") outside node range [0, " << num_nodes
          << ")";
      throw DataError(msg.str());
    }
    if (u == v) {
      ++self_loops;
      continue;
    }
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  if (node_labels) {
    if (node_labels->size() != num_nodes) {
      std::ostringstream msg;
      msg << "node label count " << node_labels->size() << " does not match " << num_nodes
          << " nodes";
      throw DataError(msg.str());
    }
    g.node_labels = std::move(node_labels);
  }
  if (dropped_self_loops) *dropped_self_loops = self_loops;
  return g;
}

std::uint32_t Graph::degree(std::uint32_t v) const {
  std::uint32_t d = 0;
  for (auto [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

std::vector<std::vector<std::uint32_t>> Graph::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(num_nodes);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& neighbors : adj) std::sort(neighbors.begin(), neighbors.end());
  return adj;
}

void Dataset::finalize() {
  if (graphs.empty()) throw DataError("dataset '" + name + "' has no graphs");
  class_values.clear();
  for (const Graph& g : graphs) class_values.push_back(g.label);
  std::sort(class_values.begin(), class_values.end());
  class_values.erase(std::unique(class_values.begin(), class_values.end()), class_values.end());
}

bool Dataset::labeled() const {
  return std::all_of(graphs.begin(), graphs.end(),
                     [](const Graph& g) { return g.node_labels.has_value(); });
}

Split stratified_split(const Dataset& dataset, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    std::ostringstream msg;
    msg << "train fraction must be in (0, 1), got " << train_fraction;
    throw ConfigError(msg.str());
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < dataset.graphs.size(); ++i) {
    by_class[dataset.graphs[i].label].push_back(i);
  }
  Split split;
  split.seed = seed;
  split.train_fraction = train_fraction;
  detail::SplitMix64 rng(seed);
  for (auto& [label, indices] : by_class) {
    detail::fisher_yates(indices, rng);
    if (indices.size() == 1) {
      std::cerr << "starhd: warning: class " << label
                << " has a single member; assigning it to train\n";
      split.train_indices.push_back(indices.front());
      continue;
    }
    const auto take = static_cast<std::size_t>(
        std::ceil(train_fraction * static_cast<double>(indices.size())));
    for (std::size_t i = 0; i < indices.size(); ++i) {
      (i < take ? split.train_indices : split.test_indices).push_back(indices[i]);
    }
  }
  return split;
}

}  // namespace starhd
