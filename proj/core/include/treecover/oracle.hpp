#pragma once

#include <cstdint>
#include <vector>

#include "treecover/cover.hpp"
#include "treecover/graph.hpp"

namespace treecover {

// Lowest common ancestors over a rooted tree via an Euler tour and a sparse
// table of first-visit depths.
class LcaIndex {
 public:
  LcaIndex() = default;
  explicit LcaIndex(const RootedTree& tree);

  int lca(int a, int b) const;
  double depth(int node) const { return wdepth_[node]; }
  double distance(int a, int b) const {
    return wdepth_[a] + wdepth_[b] - 2 * wdepth_[lca(a, b)];
  }
  int size() const { return static_cast<int>(wdepth_.size()); }

 private:
  std::vector<double> wdepth_;
  std::vector<int> first_;
  std::vector<int> euler_;
  std::vector<int> level_;
  std::vector<std::vector<int>> table_;  // indices into euler_
  int better(int i, int j) const { return level_[euler_[i]] <= level_[euler_[j]] ? i : j; }
};

struct QueryResult {
  double distance = 0.0;
  int tree = -1;         // index into the flattened tree list, -1 for u == v
  int lca_lookups = 0;
};

// Distance oracle over a cover: per vertex, the trees containing it; a query
// intersects the two lists and takes the best tree distance.
class CoverOracle {
 public:
  CoverOracle(const ForestCover& cover, int vertex_count);

  QueryResult query(int u, int v) const;
  int tree_count() const { return static_cast<int>(trees_.size()); }
  int vertex_count() const { return n_; }
  // Total stored words: tree nodes plus per-vertex membership entries.
  int64_t space() const;

 private:
  int n_;
  std::vector<const RootedTree*> trees_;
  std::vector<LcaIndex> lca_;
  // Per vertex, (tree, node) sorted by tree.
  std::vector<std::vector<std::pair<int, int>>> membership_;
};

// Emulator graph: union over cover trees of each tree pruned to the terminals.
// Non-terminal leaves are removed repeatedly and non-terminal degree-2 nodes
// are contracted. Terminals keep their ids 0..|S|-1 in terminal order.
struct Emulator {
  Graph graph;
  std::vector<int> terminals;            // emulator vertex i < |S| is terminals[i]
  std::vector<int> per_tree_vertex_count;
};

Emulator build_emulator(const ForestCover& cover, const std::vector<int>& terminals, int vertex_count);

// Single tree pruned to terminals: returns the pruned tree (Steiner nodes where
// vertices are not terminals).
RootedTree prune_tree(const RootedTree& tree, const std::vector<char>& is_terminal);

}  // namespace treecover
