#include "starhd/pagerank.hpp"

#include <atomic>
#include <cmath>
#include <iostream>

#include "starhd/errors.hpp"

namespace starhd {

std::vector<double> pagerank(const Graph& graph, double damping, double tol,
                             std::size_t max_iter) {
  const std::size_t n = graph.num_nodes;
  if (n == 0) throw DomainError("pagerank of an empty graph");

  const auto adj = graph.adjacency();
  std::vector<double> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = static_cast<double>(adj[v].size());

  std::vector<double> scores(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  const double teleport = (1.0 - damping) / static_cast<double>(n);

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (degree[v] == 0.0) dangling += scores[v];
    }
    const double dangling_share = damping * dangling / static_cast<double>(n);
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      double in_flow = 0.0;
      for (std::uint32_t u : adj[v]) in_flow += scores[u] / degree[u];
      next[v] = teleport + dangling_share + damping * in_flow;
      delta += std::abs(next[v] - scores[v]);
    }
    scores.swap(next);
    if (delta < tol) return scores;
  }
  // Bipartite graphs contract at the damping rate, so the default budget
  // can legitimately stop just short of tol; warn once, not per graph.
  static std::atomic<bool> warned{false};
  if (!warned.exchange(true)) {
    std::cerr << "starhd: warning: pagerank did not converge within " << max_iter
              << " iterations (reported once; later occurrences are silent)\n";
  }
  return scores;
}

}  // namespace starhd
