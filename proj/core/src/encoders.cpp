#include "starhd/encoders.hpp"

#include <algorithm>
#include <numeric>

#include "starhd/errors.hpp"
#include "starhd/pagerank.hpp"

namespace starhd {

namespace {

std::string label_token(int label) { return "L:" + std::to_string(label); }
std::string degree_token(std::uint32_t degree) { return "D:" + std::to_string(degree); }
std::string rank_token(std::size_t rank) { return "R:" + std::to_string(rank); }

std::string node_id_token(const Graph& graph, std::uint32_t v) {
  return "G:" + std::to_string(graph.ordinal) + ":N:" + std::to_string(v);
}

void require_nonempty(const Graph& graph) {
  if (graph.num_nodes == 0) throw DomainError("cannot encode an empty graph");
}

std::string keyed_token(NodeKeying keying, const Graph& graph, std::uint32_t v,
                        const std::vector<std::vector<std::uint32_t>>& adj) {
  switch (keying) {
    case NodeKeying::NodeLabel:
      if (!graph.node_labels) {
        throw ConfigError("node-label keying requires node labels on every graph");
      }
      return label_token((*graph.node_labels)[v]);
    case NodeKeying::Degree:
      return degree_token(static_cast<std::uint32_t>(adj[v].size()));
    case NodeKeying::NodeIdRandom:
      return node_id_token(graph, v);
  }
  throw ConfigError("unreachable keying");
}

// Codebook access policy: label/degree/rank tokens live in a bounded
// universe and are memoized; per-node identity tokens are generated without
// memoization, their universe grows with the corpus.
const Hypervector token_vector(const Codebook& codebook, NodeKeying keying,
                               const std::string& token) {
  if (keying == NodeKeying::NodeIdRandom) return codebook.generate(token);
  return codebook.get(token);
}

struct StarTerm {
  std::string node_token;
  std::vector<std::string> neighbor_tokens;  // already in bind order
  std::string signature;
};

// Builds the star term of every node. Bind order: ascending node index for
// Vtb, ascending token value otherwise (exact reindexing invariance).
std::vector<StarTerm> build_star_terms(const EncoderConfig& config, const Graph& graph) {
  const auto adj = graph.adjacency();
  std::vector<std::string> tokens(graph.num_nodes);
  for (std::uint32_t v = 0; v < graph.num_nodes; ++v) {
    tokens[v] = keyed_token(config.keying, graph, v, adj);
  }
  std::vector<StarTerm> terms(graph.num_nodes);
  for (std::uint32_t v = 0; v < graph.num_nodes; ++v) {
    StarTerm& term = terms[v];
    term.node_token = tokens[v];
    term.neighbor_tokens.reserve(adj[v].size());
    for (std::uint32_t u : adj[v]) term.neighbor_tokens.push_back(tokens[u]);
    if (config.backend != Backend::Vtb) {
      std::sort(term.neighbor_tokens.begin(), term.neighbor_tokens.end());
    }
    term.signature = term.node_token;
    term.signature += '(';
    for (const std::string& t : term.neighbor_tokens) {
      term.signature += t;
      term.signature += ',';
    }
    term.signature += ')';
  }
  // Superposition order must not depend on node numbering either: outside
  // Vtb, terms bundle in ascending signature order (bitwise reproducible
  // for any relabeling); Vtb keeps node-index order per its contract.
  if (config.backend != Backend::Vtb) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const StarTerm& a, const StarTerm& b) { return a.signature < b.signature; });
  }
  return terms;
}

Hypervector star_term_vector(const Codebook& codebook, NodeKeying keying, const StarTerm& term) {
  Hypervector hv = token_vector(codebook, keying, term.node_token);
  for (const std::string& t : term.neighbor_tokens) {
    hv = bind(hv, token_vector(codebook, keying, t));
  }
  return hv;
}

std::vector<std::size_t> centrality_ranks(const Graph& graph, CentralityMetric metric) {
  std::vector<double> score(graph.num_nodes);
  if (metric == CentralityMetric::PageRank) {
    score = pagerank(graph);
  } else {
    const auto adj = graph.adjacency();
    for (std::uint32_t v = 0; v < graph.num_nodes; ++v) {
      score[v] = static_cast<double>(adj[v].size());
    }
  }
  std::vector<std::uint32_t> order(graph.num_nodes);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return a < b;
  });
  std::vector<std::size_t> rank(graph.num_nodes);
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

Hypervector encode_edge_bundle(const Codebook& codebook, const Graph& graph,
                               const std::vector<Hypervector>& node_vectors) {
  Hypervector acc = Hypervector::zero(codebook.backend(), codebook.dim());
  if (graph.edges.empty()) {
    for (const Hypervector& hv : node_vectors) accumulate(acc, hv);
    return acc;
  }
  for (auto [u, v] : graph.edges) {
    accumulate(acc, bind(node_vectors[u], node_vectors[v]));
  }
  return acc;
}

}  // namespace

const char* keying_name(NodeKeying keying) {
  switch (keying) {
    case NodeKeying::NodeLabel:
      return "label";
    case NodeKeying::Degree:
      return "degree";
    case NodeKeying::NodeIdRandom:
      return "random";
  }
  return "unknown";
}

NodeKeying keying_from_name(const std::string& name) {
  if (name == "label") return NodeKeying::NodeLabel;
  if (name == "degree") return NodeKeying::Degree;
  if (name == "random") return NodeKeying::NodeIdRandom;
  throw ConfigError("unknown node keying: " + name);
}

const char* encoder_kind_name(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::Star:
      return "star";
    case EncoderKind::GaylerLevy:
      return "gayler-levy";
    case EncoderKind::GraphHd:
      return "graphhd";
  }
  return "unknown";
}

EncoderKind encoder_kind_from_name(const std::string& name) {
  if (name == "star") return EncoderKind::Star;
  if (name == "gayler-levy" || name == "gayler_levy") return EncoderKind::GaylerLevy;
  if (name == "graphhd") return EncoderKind::GraphHd;
  throw ConfigError("unknown encoder: " + name);
}

const char* centrality_name(CentralityMetric metric) {
  switch (metric) {
    case CentralityMetric::PageRank:
      return "pagerank";
    case CentralityMetric::Degree:
      return "degree";
  }
  return "unknown";
}

CentralityMetric centrality_from_name(const std::string& name) {
  if (name == "pagerank") return CentralityMetric::PageRank;
  if (name == "degree") return CentralityMetric::Degree;
  throw ConfigError("unknown centrality metric: " + name);
}

Hypervector phi(const Codebook& codebook, NodeKeying keying, const Graph& graph,
                std::uint32_t v) {
  if (v >= graph.num_nodes) throw DomainError("node index out of range");
  const auto adj = graph.adjacency();
  return token_vector(codebook, keying, keyed_token(keying, graph, v, adj));
}

Hypervector encode_star(const EncoderConfig& config, const Codebook& codebook,
                        const Graph& graph) {
  require_nonempty(graph);
  const auto terms = build_star_terms(config, graph);
  Hypervector acc = Hypervector::zero(codebook.backend(), codebook.dim());
  for (const StarTerm& term : terms) {
    accumulate(acc, star_term_vector(codebook, config.keying, term));
  }
  return acc;
}

Hypervector encode_gayler_levy(const Codebook& codebook, const Graph& graph) {
  require_nonempty(graph);
  std::vector<Hypervector> node_vectors;
  node_vectors.reserve(graph.num_nodes);
  for (std::uint32_t v = 0; v < graph.num_nodes; ++v) {
    node_vectors.push_back(codebook.generate(node_id_token(graph, v)));
  }
  return encode_edge_bundle(codebook, graph, node_vectors);
}

Hypervector encode_graphhd(const Codebook& codebook, const Graph& graph,
                           CentralityMetric centrality) {
  require_nonempty(graph);
  const auto ranks = centrality_ranks(graph, centrality);
  std::vector<Hypervector> node_vectors;
  node_vectors.reserve(graph.num_nodes);
  for (std::uint32_t v = 0; v < graph.num_nodes; ++v) {
    node_vectors.push_back(codebook.get(rank_token(ranks[v])));
  }
  return encode_edge_bundle(codebook, graph, node_vectors);
}

Encoder::Encoder(const EncoderConfig& config, std::size_t cache_budget_bytes)
    : config_(config), codebook_(config.backend, config.dim, config.seed) {
  const std::size_t payload =
      (config.backend == Backend::Fhrr ? 2 * config.dim : config.dim) * sizeof(double);
  max_cache_entries_ = std::max<std::size_t>(1, cache_budget_bytes / std::max<std::size_t>(payload, 1));
}

Hypervector Encoder::encode(const Graph& graph) const {
  switch (config_.kind) {
    case EncoderKind::Star:
      return encode_star_cached(graph);
    case EncoderKind::GaylerLevy:
      return encode_gayler_levy(codebook_, graph);
    case EncoderKind::GraphHd:
      return encode_graphhd(codebook_, graph, config_.centrality);
  }
  throw ConfigError("unreachable encoder kind");
}

Hypervector Encoder::encode_star_cached(const Graph& graph) const {
  require_nonempty(graph);
  if (config_.keying == NodeKeying::NodeIdRandom) {
    // Per-node identity signatures never repeat across graphs; bypass.
    return encode_star(config_, codebook_, graph);
  }
  const auto terms = build_star_terms(config_, graph);
  Hypervector acc = Hypervector::zero(codebook_.backend(), codebook_.dim());
  for (const StarTerm& term : terms) {
    {
      std::shared_lock lock(cache_mutex_);
      auto it = star_cache_.find(term.signature);
      if (it != star_cache_.end()) {
        accumulate(acc, it->second);
        continue;
      }
    }
    Hypervector hv = star_term_vector(codebook_, config_.keying, term);
    accumulate(acc, hv);
    std::unique_lock lock(cache_mutex_);
    if (star_cache_.size() < max_cache_entries_) {
      star_cache_.emplace(term.signature, std::move(hv));
    }
  }
  return acc;
}

std::size_t Encoder::cached_terms() const {
  std::shared_lock lock(cache_mutex_);
  return star_cache_.size();
}

}  // namespace starhd
