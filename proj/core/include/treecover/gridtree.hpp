#pragma once

#include <string>
#include <vector>

#include "treecover/graph.hpp"
#include "treecover/planar.hpp"

namespace treecover {

struct Column {
  int parent = -1;  // parent column, -1 at the root
  int level = 0;    // distance from the root column
  std::vector<int> vertices;  // sorted
  std::vector<int> spine;     // shortest path inside the column's subtree graph
};

// Columns indexed so that parents precede children. leftover[c] is the
// leftover set on the tree edge (parent(c), c); for the root column it sits on
// a virtual edge to an imaginary parent.
struct Gridtree {
  double width = 0.0;
  std::vector<int> host;  // sorted vertex set of the partitioned subgraph
  std::vector<Column> columns;
  std::vector<std::vector<int>> leftover;

  std::vector<std::vector<int>> children() const;
  // Column c plus every column, and leftover set, in its subtree (including
  // the leftover set on c's parent edge).
  std::vector<int> subtree_vertices(int c) const;
};

// One round of path selection over `host`, before vertices near spines are
// pulled into columns. `external` marks external vertices of the host.
struct SelectionNode {
  int parent = -1;
  std::vector<int> vertices;  // the node's subgraph
  std::vector<int> spine;
  std::vector<int> neighborhood;
  std::vector<int> leftover;
};

std::vector<SelectionNode> select_paths(const OuterFaceOracle& faces, const std::vector<int>& host,
                                        const std::vector<char>& external, int start, double w);

Gridtree build_gridtree(const OuterFaceOracle& faces, const std::vector<int>& host,
                        const std::vector<char>& external, double w);

struct HierarchyNode {
  int parent = -1;
  int layer = 0;  // 0 at the root
  std::vector<int> outer;     // vertices adjacent to a column of the parent's gridtree
  std::vector<int> external;  // external vertices used while building
  std::vector<int> children;
  Gridtree tree;
};

struct GridtreeHierarchy {
  double width = 0.0;
  std::vector<HierarchyNode> nodes;  // parents precede children

  int depth() const;
};

GridtreeHierarchy build_hierarchy(const Graph& g, const Embedding& emb, double w);

struct GridtreeReport {
  bool ok = true;
  bool partition = true;
  bool adjacency = true;
  bool width = true;
  // Width restricted to paths entering from outside H_eta, i.e. not from the
  // leftover set on the column's own parent edge.
  bool parent_width = true;
  bool shortcut = true;
  double min_passing_length = 0.0;         // shortest path found passing through a column
  double min_parent_passing_length = 0.0;  // same, entering from outside H_eta
  std::vector<std::string> failures;
};

GridtreeReport check_gridtree(const Graph& g, const Gridtree& t);

struct HierarchyReport {
  bool ok = true;
  bool gridtrees = true;
  bool width = true;
  bool parent_width = true;
  bool nesting = true;
  bool layer_width = true;
  bool depth = true;
  int depth_value = 0;
  int depth_bound = 0;
  double min_passing_length = 0.0;
  double min_parent_passing_length = 0.0;
  std::vector<std::string> failures;
};

HierarchyReport check_hierarchy(const Graph& g, const GridtreeHierarchy& h, double delta);

}  // namespace treecover
