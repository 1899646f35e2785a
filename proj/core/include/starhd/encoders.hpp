#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "starhd/codebook.hpp"
#include "starhd/graph.hpp"
#include "starhd/vsa.hpp"

namespace starhd {

/// What the atomic node mapping keys on.
///
/// NodeLabel    "L:<label>"                requires labeled graphs
/// Degree       "D:<degree>"
/// NodeIdRandom "G:<ordinal>:N:<index>"    fresh vector per node identity
enum class NodeKeying : std::uint8_t { NodeLabel = 0, Degree = 1, NodeIdRandom = 2 };

enum class EncoderKind : std::uint8_t { Star = 0, GaylerLevy = 1, GraphHd = 2 };

enum class CentralityMetric : std::uint8_t { PageRank = 0, Degree = 1 };

const char* keying_name(NodeKeying keying);
NodeKeying keying_from_name(const std::string& name);
const char* encoder_kind_name(EncoderKind kind);
EncoderKind encoder_kind_from_name(const std::string& name);
const char* centrality_name(CentralityMetric metric);
CentralityMetric centrality_from_name(const std::string& name);

struct EncoderConfig {
  EncoderKind kind = EncoderKind::Star;
  NodeKeying keying = NodeKeying::NodeLabel;
  CentralityMetric centrality = CentralityMetric::PageRank;  // GraphHd only
  Backend backend = Backend::Map;
  std::size_t dim = 10000;
  std::uint64_t seed = 0;
};

/// Atomic node mapping. Throws ConfigError for NodeLabel keying on an
/// unlabeled graph, DomainError for an out-of-range node.
Hypervector phi(const Codebook& codebook, NodeKeying keying, const Graph& graph,
                std::uint32_t v);

/// Star-subgraph encoding: every node contributes its vector bound with all
/// of its neighbors' vectors, and the graph vector is the superposition of
/// those star terms. Neighbors bind in ascending node-index order for Vtb
/// (part of the contract; Vtb binding is not commutative) and in ascending
/// token order otherwise, which makes the output exactly invariant under
/// node reindexing for index-free keyings. Throws DomainError on an empty
/// graph.
Hypervector encode_star(const EncoderConfig& config, const Codebook& codebook,
                        const Graph& graph);

/// Edge-bundle baseline: each edge contributes bind(phi(u), phi(v)) under
/// per-node random keying; an edgeless graph falls back to bundling the bare
/// node vectors so every sample still scores.
Hypervector encode_gayler_levy(const Codebook& codebook, const Graph& graph);

/// Centrality-rank baseline: nodes are ranked by descending centrality
/// (ties by node index) and keyed by rank; edges encode as in the edge
/// bundle. Edgeless graphs bundle the bare rank vectors.
Hypervector encode_graphhd(const Codebook& codebook, const Graph& graph,
                           CentralityMetric centrality);

/// Batch entry point used by the harness: owns the codebook and, for the
/// star encoder under label/degree keying, a star-term cache keyed by the
/// (node token, ordered neighbor tokens) signature. Outputs are bitwise
/// identical to the free functions; the cache only skips recomputing star
/// terms the dataset repeats. Safe to call from many threads.
class Encoder {
 public:
  explicit Encoder(const EncoderConfig& config, std::size_t cache_budget_bytes = 256u << 20);

  const EncoderConfig& config() const { return config_; }
  const Codebook& codebook() const { return codebook_; }

  Hypervector encode(const Graph& graph) const;

  std::size_t cached_terms() const;

 private:
  Hypervector encode_star_cached(const Graph& graph) const;

  EncoderConfig config_;
  Codebook codebook_;
  std::size_t max_cache_entries_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::string, Hypervector> star_cache_;
};

}  // namespace starhd
