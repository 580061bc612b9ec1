#pragma once

#include <vector>

#include "treecover/graph.hpp"
#include "treecover/shortcut_partition.hpp"
#include "treecover/tree_decomposition.hpp"

namespace treecover {

// Copy graph: one copy of v per bag holding v, each bag a clique weighted by
// graph distance, and weight-0 edges between copies in parent and child bags.
// The decomposition is rooted at bag 0.
struct PreprocessedInstance {
  Graph graph;
  std::vector<int> copy_of;                   // copy -> original vertex
  std::vector<int> bag_of;                    // copy -> bag
  std::vector<std::vector<int>> bag_copies;   // bag -> copies, in bag order
  std::vector<int> bag_parent;                // -1 at the root bag
  std::vector<int> bag_depth;
};

PreprocessedInstance preprocess(const Graph& g, const TreeDecomposition& td, int threads = 1);

struct RootBag {
  int round = 0;
  int bag = -1;
  std::vector<int> centers;  // original vertices, in creation order
};

struct TwClustering {
  Partition partition;
  std::vector<RootBag> root_bags;
  std::vector<int> bag_parent;
  std::vector<int> bag_depth;
  std::vector<int> unclustered_after_round;  // copies left after rounds k+1 .. 1
  int width = 0;
  int disconnected_touch_sets = 0;            // calls whose touched bags were not connected
};

// Rounds k+1 down to 1 of ball growing from unclustered copies of each
// subtree's root bag, then the final split by nearest center. Throws
// InvariantViolation if copies remain unclustered.
TwClustering tw_cluster(const Graph& g, const TreeDecomposition& td, double eps, double delta);

// Nearest-center split: every vertex joins its closest center, ties to the
// smaller center id. Clusters are numbered by center id.
Partition finalize_clusters(const Graph& g, std::vector<int> centers, double eps, double delta);

// J_1 = k + 1, J_i = ((k+1)(1/eps+3)+1) J_{i-1} + (k+1)(1/eps+3).
double hop_recurrence(int k, double eps, int i);

struct TwPartitionCheck {
  double diameter_factor = 2.0;
  int exact_pairs_cap = 1500;
  int samples = 10000;
  uint64_t seed = 1;
  double tolerance = 1e-9;
  int threads = 1;
};

// Totality, connectivity, strong diameter, spacing of centers in nested root
// bags of one round, progress per round, and cluster hops of shortest paths
// against J_{k+1}.
PartitionReport verify_tw_partition(const Graph& g, const TwClustering& c, const TwPartitionCheck& check);

}  // namespace treecover
