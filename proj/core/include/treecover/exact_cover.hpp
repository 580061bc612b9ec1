#pragma once

#include <vector>

#include "treecover/cover.hpp"
#include "treecover/graph.hpp"
#include "treecover/shortcut_partition.hpp"

namespace treecover {

// Vertices removed repeatedly at minimum degree (ties by smaller id).
// Returns the degeneracy; `order` receives the removal order.
int degeneracy(const Graph& g, std::vector<int>* order = nullptr);

struct Star {
  int center = -1;
  std::vector<int> leaves;  // sorted
};

using StarForest = std::vector<Star>;  // stars sorted by center

// Edge decomposition into star forests: each vertex sends its edges to
// later-removed neighbours into distinct forests, and each forest is split by
// the depth parity of the parent. Every edge lands in exactly one star.
std::vector<StarForest> star_forests(const Graph& g);

// A BFS tree is fixed by its root and vertex set: the BFS tree of g[vertices].
struct BfsTreeSpec {
  int root = -1;
  std::vector<int> vertices;  // sorted

  bool operator==(const BfsTreeSpec&) const = default;
  auto operator<=>(const BfsTreeSpec&) const = default;
};

using BfsForest = std::vector<BfsTreeSpec>;  // trees sorted, vertex-disjoint

// BFS tree of g[spec.vertices] from spec.root; parent ties go to the vertex
// dequeued first.
RootedTree bfs_tree(const Graph& g, const BfsTreeSpec& spec);

bool is_bfs_forest(const Graph& g, const BfsForest& f);

// The base set: one BFS forest per star forest of g.
std::vector<BfsForest> star_forest_base(const Graph& g);

// Root expansion of a BFS forest: the forest itself plus, per colour class of
// its trees and per star forest of the graph with that class contracted, the
// uncompressed stars.
std::vector<BfsForest> root_expansion(const Graph& g, const BfsForest& f);

// True if some tree of some forest holds every vertex of `path` and its root
// lies on the path.
bool preserves(const std::vector<BfsForest>& forests, const std::vector<int>& path);

struct ExactCoverOptions {
  int max_forests = 200000;
  int threads = 1;
};

// Forests preserving every path of at most max_len edges in an unweighted
// graph. Stops early once an expansion round adds nothing new.
std::vector<BfsForest> exact_cover_forests(const Graph& g, int max_len, const ExactCoverOptions& opt = {});

// Same forests as spanning BFS trees.
ForestCover exact_cover(const Graph& g, int max_len, const ExactCoverOptions& opt = {});

// Unit-weight graph on the clusters.
Graph cluster_graph_as_graph(const ClusterGraph& cg);

// Largest over all pairs of the cluster-hop cost of the deterministic
// Dijkstra shortest path.
int shortest_path_hops(const Graph& g, const Partition& p, int threads = 1);

// Star from the smallest vertex of the root cluster to every vertex in the
// clusters of the tree, with exact graph distances as weights.
RootedTree star_transform(const BfsTreeSpec& cluster_tree, const Partition& p,
                          const std::vector<double>& dist_from_center);

struct PartitionCover {
  ForestCover cover;
  int hops = 0;
  int cluster_forests = 0;
};

// Exact cover of the cluster graph for paths of `hops` edges, each tree
// replaced by its star. A negative `hops` means shortest_path_hops. The
// additive bound is twice the largest strong cluster diameter.
PartitionCover partition_to_cover(const Graph& g, const Partition& p, int hops = -1,
                                  const ExactCoverOptions& opt = {});

}  // namespace treecover
