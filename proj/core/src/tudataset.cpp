#include "starhd/tudataset.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include "starhd/errors.hpp"

namespace starhd {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void fail_at(const fs::path& file, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << file.string() << ":" << line << ": " << what;
  throw ParseError(msg.str());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

long long parse_int(std::string_view token, const fs::path& file, std::size_t line) {
  token = trim(token);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.begin(), token.end(), value);
  if (ec != std::errc() || ptr != token.end() || token.empty()) {
    fail_at(file, line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

// Calls fn(line_view, line_number) for every non-empty line.
template <typename Fn>
void for_each_line(const fs::path& file, Fn&& fn) {
  std::ifstream in(file);
  if (!in) throw ParseError(file.string() + ": cannot open file");
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    fn(std::string_view(line), number);
  }
}

std::size_t count_lines(const fs::path& file) {
  std::size_t n = 0;
  for_each_line(file, [&](std::string_view, std::size_t) { ++n; });
  return n;
}

}  // namespace

Dataset parse_tudataset(const fs::path& root, const std::string& name) {
  const fs::path a_file = root / (name + "_A.txt");
  const fs::path indicator_file = root / (name + "_graph_indicator.txt");
  const fs::path labels_file = root / (name + "_graph_labels.txt");
  const fs::path node_labels_file = root / (name + "_node_labels.txt");
  const fs::path edge_labels_file = root / (name + "_edge_labels.txt");

  for (const fs::path* required : {&a_file, &indicator_file, &labels_file}) {
    if (!fs::exists(*required)) {
      throw ParseError("missing mandatory dataset file " + required->string());
    }
  }

  // Global node -> graph id (1-based), plus per-graph local numbering in
  // order of appearance.
  std::vector<std::size_t> node_graph;
  for_each_line(indicator_file, [&](std::string_view line, std::size_t number) {
    const long long gid = parse_int(line, indicator_file, number);
    if (gid < 1) fail_at(indicator_file, number, "graph ids are 1-based");
    node_graph.push_back(static_cast<std::size_t>(gid));
  });
  if (node_graph.empty()) throw ParseError(indicator_file.string() + ": no nodes");

  std::size_t num_graphs = 0;
  for (std::size_t gid : node_graph) num_graphs = std::max(num_graphs, gid);

  std::vector<std::uint32_t> node_local(node_graph.size());
  std::vector<std::uint32_t> graph_sizes(num_graphs, 0);
  for (std::size_t i = 0; i < node_graph.size(); ++i) {
    node_local[i] = graph_sizes[node_graph[i] - 1]++;
  }
  for (std::size_t g = 0; g < num_graphs; ++g) {
    if (graph_sizes[g] == 0) {
      std::ostringstream msg;
      msg << indicator_file.string() << ": graph " << (g + 1) << " has zero nodes";
      throw ParseError(msg.str());
    }
  }

  std::vector<int> graph_labels;
  for_each_line(labels_file, [&](std::string_view line, std::size_t number) {
    graph_labels.push_back(static_cast<int>(parse_int(line, labels_file, number)));
  });
  if (graph_labels.size() != num_graphs) {
    std::ostringstream msg;
    msg << labels_file.string() << ": " << graph_labels.size() << " labels for " << num_graphs
        << " graphs";
    throw ParseError(msg.str());
  }

  std::optional<std::vector<int>> node_labels;
  if (fs::exists(node_labels_file)) {
    node_labels.emplace();
    node_labels->reserve(node_graph.size());
    for_each_line(node_labels_file, [&](std::string_view line, std::size_t number) {
      node_labels->push_back(static_cast<int>(parse_int(line, node_labels_file, number)));
    });
    if (node_labels->size() != node_graph.size()) {
      std::ostringstream msg;
      msg << node_labels_file.string() << ": " << node_labels->size() << " labels for "
          << node_graph.size() << " nodes";
      throw ParseError(msg.str());
    }
  }

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> raw_edges(num_graphs);
  std::size_t edge_lines = 0;
  for_each_line(a_file, [&](std::string_view line, std::size_t number) {
    ++edge_lines;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      fail_at(a_file, number, "expected 'u, v' edge pair");
    }
    const long long u = parse_int(line.substr(0, comma), a_file, number);
    const long long v = parse_int(line.substr(comma + 1), a_file, number);
    if (u < 1 || v < 1 || static_cast<std::size_t>(u) > node_graph.size() ||
        static_cast<std::size_t>(v) > node_graph.size()) {
      fail_at(a_file, number, "node id outside the indicator range");
    }
    const std::size_t gu = node_graph[u - 1];
    const std::size_t gv = node_graph[v - 1];
    if (gu != gv) {
      std::ostringstream msg;
      msg << "edge joins node " << u << " (graph " << gu << ") with node " << v << " (graph "
          << gv << ")";
      fail_at(a_file, number, msg.str());
    }
    raw_edges[gu - 1].emplace_back(node_local[u - 1], node_local[v - 1]);
  });

  // Edge labels carry no information the encoders use; only the line count
  // is validated against the edge list.
  if (fs::exists(edge_labels_file)) {
    const std::size_t n = count_lines(edge_labels_file);
    if (n != edge_lines) {
      std::ostringstream msg;
      msg << edge_labels_file.string() << ": " << n << " labels for " << edge_lines
          << " edge lines";
      throw ParseError(msg.str());
    }
  }

  std::vector<std::vector<int>> per_graph_labels;
  if (node_labels) {
    per_graph_labels.resize(num_graphs);
    for (std::size_t g = 0; g < num_graphs; ++g) per_graph_labels[g].reserve(graph_sizes[g]);
    for (std::size_t i = 0; i < node_graph.size(); ++i) {
      per_graph_labels[node_graph[i] - 1].push_back((*node_labels)[i]);
    }
  }

  Dataset dataset;
  dataset.name = name;
  dataset.graphs.reserve(num_graphs);
  std::size_t dropped_total = 0;
  for (std::size_t g = 0; g < num_graphs; ++g) {
    std::optional<std::vector<int>> labels;
    if (node_labels) labels = std::move(per_graph_labels[g]);
    std::size_t dropped = 0;
    Graph graph = Graph::make(graph_sizes[g], std::move(raw_edges[g]), std::move(labels),
                              graph_labels[g], &dropped);
    graph.ordinal = g;
    dropped_total += dropped;
    dataset.graphs.push_back(std::move(graph));
  }
  if (dropped_total > 0) {
    std::cerr << "starhd: warning: dropped " << dropped_total << " self-loop(s) while parsing "
              << name << "\n";
  }
  dataset.finalize();
  return dataset;
}

void write_tudataset(const Dataset& dataset, const fs::path& root) {
  fs::create_directories(root);
  const std::string& name = dataset.name;
  std::ofstream a(root / (name + "_A.txt"));
  std::ofstream indicator(root / (name + "_graph_indicator.txt"));
  std::ofstream labels(root / (name + "_graph_labels.txt"));
  if (!a || !indicator || !labels) {
    throw IoError("cannot create dataset files under " + root.string());
  }
  std::ofstream node_labels;
  const bool with_node_labels = dataset.labeled();
  if (with_node_labels) {
    node_labels.open(root / (name + "_node_labels.txt"));
    if (!node_labels) throw IoError("cannot create node label file under " + root.string());
  }

  std::size_t base = 1;  // first global id of the current graph
  for (std::size_t g = 0; g < dataset.graphs.size(); ++g) {
    const Graph& graph = dataset.graphs[g];
    labels << graph.label << "\n";
    for (std::uint32_t v = 0; v < graph.num_nodes; ++v) {
      indicator << (g + 1) << "\n";
      if (with_node_labels) node_labels << (*graph.node_labels)[v] << "\n";
    }
    for (auto [u, v] : graph.edges) {
      a << (base + u) << ", " << (base + v) << "\n";
      a << (base + v) << ", " << (base + u) << "\n";
    }
    base += graph.num_nodes;
  }
}

}  // namespace starhd
