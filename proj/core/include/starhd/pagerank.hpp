#pragma once

#include <vector>

#include "starhd/graph.hpp"

namespace starhd {

/// Power iteration over the column-stochastic transition matrix of the
/// undirected graph, uniform teleport, dangling mass spread uniformly.
/// Scores sum to 1. Converges when the L1 change drops below `tol`; if
/// `max_iter` passes first, a warning is printed and the last iterate is
/// returned. Throws DomainError on an empty graph.
std::vector<double> pagerank(const Graph& graph, double damping = 0.85, double tol = 1e-8,
                             std::size_t max_iter = 100);

}  // namespace starhd
