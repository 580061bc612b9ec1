#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treecover/graph.hpp"
#include "treecover/gridtree.hpp"
#include "treecover/shortest_paths.hpp"

namespace treecover {

struct Cluster {
  std::vector<int> vertices;  // sorted
  int center = -1;
  int node = -1;     // hierarchy node owning the column, -1 if none
  int column = -1;   // column index inside that node's gridtree
  int ordinal = 0;   // position of the center along the column's spine
};

struct Partition {
  std::vector<int> cluster_of;
  std::vector<Cluster> clusters;
  double eps = 0.0;
  double t = 0.0;
  double delta = 0.0;

  int size() const { return static_cast<int>(clusters.size()); }
};

// Cluster graph: one supernode per cluster, an edge wherever a graph edge
// joins two clusters.
struct ClusterGraph {
  std::vector<std::vector<int>> adj;  // sorted

  int size() const { return static_cast<int>(adj.size()); }
  bool adjacent(int a, int b) const;
};

ClusterGraph build_cluster_graph(const Graph& g, const std::vector<int>& cluster_of, int count);

// Rebuilds the cluster vertex lists from cluster_of.
void rebuild_cluster_vertices(Partition& p);

// Clusters one column: greedy centers every eps*delta along the spine, spine
// vertices to the nearest center, other vertices to the cluster of their
// nearest spine vertex inside the column. Clusters come back in spine order.
std::vector<Cluster> cluster_column(const Graph& g, const Column& col, double eps, double delta);

// Union of cluster_column over every column of every hierarchy node.
// Requires h.width == t * eps * delta.
Partition cluster_hierarchy(const Graph& g, const GridtreeHierarchy& h, double eps, double t,
                            double delta);

struct PlanarPartition {
  GridtreeHierarchy hierarchy;
  Partition partition;
};

PlanarPartition build_planar_partition(const Graph& g, const Embedding& emb, double eps, double t,
                                       double delta);

// Minimum hop count in the cluster graph between the clusters of the path's
// endpoints, using only clusters the path touches.
int path_cost(const Partition& p, const ClusterGraph& cg, const std::vector<int>& path);

enum class CostWitness { ShortestPath, SpineDetour, Chopped, None };

struct CostCertificate {
  int cost = -1;  // -1 when no candidate fits the length budget
  CostWitness witness = CostWitness::None;
  std::vector<int> path;
  double length = 0.0;
};

// Upper bound on the cost with (1 + slack_factor) distortion, from candidate
// paths: a shortest path, the spine detour within one column, and the
// piecewise detour through the hierarchy. Candidates are tried lazily: the
// next one is built only if the best so far exceeds `target`.
class CostEvaluator {
 public:
  CostEvaluator(const Graph& g, const GridtreeHierarchy& h, const Partition& p);

  const ClusterGraph& cluster_graph() const { return cg_; }

  CostCertificate evaluate(int u, int v, const ShortestPathTree& from_u, double slack_factor,
                           double target) const;
  // Piecewise detour of a shortest path; returns a simple path.
  std::vector<int> chopped_path(const std::vector<int>& path, double slack_factor) const;
  std::vector<int> spine_detour(int u, int v) const;
  double path_length(const std::vector<int>& path) const;

 private:
  std::vector<int> improve(const std::vector<int>& path, size_t lo, size_t hi, int node,
                           double slack_factor) const;
  std::vector<int> attach_chain(int v) const;

  const Graph* g_;
  const GridtreeHierarchy* h_;
  const Partition* p_;
  ClusterGraph cg_;
  std::vector<int> node_of_;        // hierarchy node whose column holds v
  std::vector<int> column_of_;      // column index inside that node
  std::vector<int> attach_;         // next vertex toward the spine, -1 on the spine
  std::vector<int> spine_index_;    // index on its column's spine, -1 off the spine
  std::vector<std::vector<double>> arc_;  // per global column, arc positions on its spine
  std::vector<int> column_base_;    // global column id offset per node
};

struct PartitionCheck {
  double diameter_factor = 4.0;  // strong diameter <= diameter_factor * eps * delta
  bool check_spacing = true;
  bool check_hops = true;
  double hop_slope = 85.0;       // cost <= hop_slope * dist / (t eps delta) + hop_offset
  double hop_offset = 80.0;
  double slack_factor = -1.0;    // distortion slack; negative means 8t
  int exact_pairs_cap = 1500;    // all pairs up to this n, else sampled
  int samples = 10000;
  uint64_t seed = 1;
  double tolerance = 1e-9;       // relative to delta
  int threads = 1;
};

struct PartitionReport {
  bool ok = true;
  bool total = true;
  bool connected = true;
  bool diameter = true;
  bool spacing = true;
  bool hops = true;
  double max_cluster_diameter = 0.0;
  double worst_spacing_slack = 0.0;  // min over center pairs of dist - |i-j| eps delta
  int max_cost = 0;
  double worst_hop_slack = 0.0;      // max over pairs of cost - bound
  long pairs = 0;
  long witness_counts[4] = {0, 0, 0, 0};
  int clusters = 0;
  int cluster_graph_hop_diameter = 0;
  std::vector<std::string> failures;
};

// Connectivity, strong diameter, spacing of centers inside each column
// (measured in the column's subtree graph), and certified hop bounds.
PartitionReport verify_partition(const Graph& g, const GridtreeHierarchy& h, const Partition& p,
                                 const PartitionCheck& check);

// Checks only connectivity, totality and strong diameter.
PartitionReport verify_clusters(const Graph& g, const Partition& p, double diameter_bound,
                                int threads = 1);

// Hop diameter of the cluster graph.
int hop_diameter(const ClusterGraph& cg);

}  // namespace treecover
