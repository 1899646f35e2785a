#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "starhd/errors.hpp"
#include "starhd/pagerank.hpp"
#include "support/synthetic.hpp"

using namespace starhd;

TEST_CASE("pagerank on symmetric graphs") {
  SUBCASE("4-cycle is uniform") {
    const Graph cycle = Graph::make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    for (double s : pagerank(cycle)) CHECK(s == doctest::Approx(0.25).epsilon(1e-9));
  }
  SUBCASE("single node gets everything") {
    const Graph single = Graph::make(1, {});
    CHECK(pagerank(single)[0] == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("3-path matches a dense google-matrix power iteration") {
  const Graph path = Graph::make(3, {{0, 1}, {1, 2}});
  const auto scores = pagerank(path);

  // Independent oracle: iterate the explicit 3x3 matrix
  // G = 0.85 * P + 0.15/3 * ones, P column-stochastic for 0-1-2.
  const double a = 0.85;
  const double t = 0.15 / 3.0;
  std::array<std::array<double, 3>, 3> G{};
  // column 0: node 0 sends all to 1; column 1: splits to 0 and 2; column 2: all to 1
  G[1][0] = a * 1.0;
  G[0][1] = a * 0.5;
  G[2][1] = a * 0.5;
  G[1][2] = a * 1.0;
  for (auto& row : G) {
    for (double& v : row) v += t;
  }
  std::array<double, 3> x{1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (int iter = 0; iter < 10000; ++iter) {
    std::array<double, 3> next{};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) next[r] += G[r][c] * x[c];
    }
    x = next;
  }

  for (int v = 0; v < 3; ++v) CHECK(scores[v] == doctest::Approx(x[v]).epsilon(1e-7));
  CHECK(scores[0] == doctest::Approx(scores[2]).epsilon(1e-9));  // symmetry
  CHECK(scores[1] > scores[0]);
}

TEST_CASE("scores sum to one, including dangling nodes") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = testsupport::random_labeled_graph(rng, 2, 15);
    // add an isolated node
    g.num_nodes += 1;
    g.node_labels->push_back(0);
    const auto scores = pagerank(g);
    double sum = 0.0;
    for (double s : scores) sum += s;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    for (double s : scores) CHECK(s > 0.0);
  }
}

TEST_CASE("empty graph is a domain error") {
  Graph empty;
  CHECK_THROWS_AS((void)pagerank(empty), DomainError);
}
