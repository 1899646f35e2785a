#pragma once

#include <filesystem>
#include <string>

#include "starhd/graph.hpp"

namespace starhd {

/// Parses the plain-text TUDataset layout rooted at `root`:
///
///   {name}_A.txt                one "u, v" edge per line, 1-based global ids
///   {name}_graph_indicator.txt  line i holds the 1-based graph id of node i
///   {name}_graph_labels.txt     one integer class label per graph
///   {name}_node_labels.txt      optional, one integer per global node
///   {name}_edge_labels.txt      optional, validated for line count only
///
/// Both edge directions and repeated edges collapse to one undirected edge;
/// self-loops are dropped with a counted warning on stderr. Node indices
/// come out 0-based per graph. Graphs with zero nodes are rejected. Errors
/// carry the offending file and line number.
Dataset parse_tudataset(const std::filesystem::path& root, const std::string& name);

/// Writes `dataset` back out in the same layout (both edge directions, 1-based
/// ids). parse_tudataset(write_tudataset(d)) reproduces d exactly. Node labels
/// are emitted only when every graph carries them.
void write_tudataset(const Dataset& dataset, const std::filesystem::path& root);

}  // namespace starhd
