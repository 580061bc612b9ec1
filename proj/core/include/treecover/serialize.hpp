#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treecover/cover.hpp"
#include "treecover/graph.hpp"
#include "treecover/gridtree.hpp"
#include "treecover/planar.hpp"
#include "treecover/shortcut_partition.hpp"

namespace treecover {

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
double parse_double(const std::string& s);

// Graph text: "p n m", m lines "e u v w", optional rotation lines
// "r v e1 e2 ...", an optional "outer d1 d2 ..." line and an optional
// terminal line "t v1 v2 ...". Lines whose first token is "c" and lines
// starting with '#' are comments.
struct GraphFile {
  Graph graph;
  std::optional<Embedding> embedding;
  std::vector<int> terminals;
};

std::string write_graph(const Graph& g, const Embedding* emb = nullptr,
                        const std::vector<int>* terminals = nullptr);
// Throws InvalidArgument on malformed text, multi-edges, or (when
// require_connected is set) a disconnected graph.
GraphFile read_graph(const std::string& text, bool require_connected = true);

// Cover text: "cover F eps delta additive empty", then per forest
// "forest T" and per tree "tree kind root size" followed by the vertex,
// parent and weight lines "v ...", "p ...", "w ...". '#' starts a comment.
std::string write_cover(const ForestCover& fc);
ForestCover read_cover(const std::string& text);

// Partition text: "partition n k eps t delta", k lines
// "c center node column ordinal", one line "a cluster_of[0] ...".
std::string write_partition(const Partition& p);
Partition read_partition(const std::string& text);

// Gridtree hierarchy as indented JSON.
std::string write_hierarchy(const GridtreeHierarchy& h);
GridtreeHierarchy read_hierarchy(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace treecover
