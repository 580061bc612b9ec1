#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "treecover/cover.hpp"
#include "treecover/graph.hpp"
#include "treecover/planar.hpp"
#include "treecover/shortest_paths.hpp"

namespace treecover {

// Nested partitions from singletons (level 0) up to one cluster (last level).
// Level j clusters have diameter at most radius[j].
struct HierarchicalPartition {
  std::vector<std::vector<int>> levels;  // levels[j][v] = cluster id of v
  std::vector<double> radius;
  std::vector<int> scale;                // base scale exponent of each level

  int depth() const { return static_cast<int>(levels.size()); }
  int cluster_count(int j) const;
};

struct PartitionFamily {
  std::vector<HierarchicalPartition> hierarchies;
  double mu = 0.0;        // base scale ratio
  double unit = 0.0;      // minimum pairwise distance
  double rho = 0.0;       // padding target (hpf) or measured pairwise ratio (hppf)
  int kappa = 1;          // interleaving factor of the split
  int sampled = 0;        // hierarchies drawn before selection
};

struct HpfOptions {
  double mu = 8.0;
  double rho = 8.0;
  int max_hierarchies = 256;
  uint64_t seed = 1;
};

// Random nested ball carving: per scale i, a random center order and one
// radius uniform in [mu^i/4, mu^i/2 - mu^(i-1)] (in units of the minimum
// distance); child clusters join the first center within that radius of any
// of their points. Hierarchies are drawn until every point is padded at every
// scale in one of them; draws padding nothing new are discarded.
PartitionFamily build_hpf(const ExactOracle& oracle, const HpfOptions& opt);

// Throws InvariantViolation on broken nesting, diameter, or level shape.
void validate_hierarchy(const HierarchicalPartition& hp, const ExactOracle& oracle);

// Per (x, scale): whether the ball of radius mu^i / rho around x lies inside
// its cluster in some hierarchy. Returns the number of uncovered pairs.
long unpadded_count(const PartitionFamily& hpf, const ExactOracle& oracle);

struct PairCertificate {
  int hierarchy = -1;
  int level = -1;
  double ratio = 0.0;  // radius[level] / dist
};

// Splits each hierarchy into kappa = ceil(log_mu(1/eps)) hierarchies by scale
// residue; each keeps singletons and the top cluster. Measures rho as the
// largest certificate ratio and throws InvariantViolation if it exceeds
// mu * padding rho.
PartitionFamily hpf_to_hppf(const PartitionFamily& hpf, double eps, const ExactOracle& oracle);

// Smallest-ratio certificate for the pair over all hierarchies.
PairCertificate certify_pair(const PartitionFamily& hppf, const ExactOracle& oracle, int x, int y);

struct NetHierarchy {
  std::vector<std::vector<int>> net_of_cluster;  // [level][cluster] -> net point
  std::vector<std::vector<char>> in_net;         // [level][v]

  int ancestor(const HierarchicalPartition& hp, int x, int level) const {
    return net_of_cluster[level][hp.levels[level][x]];
  }
};

// Top level net is the smallest vertex; lower levels keep the net point of
// the parent cluster when present, else the smallest vertex of the cluster.
NetHierarchy build_nets(const HierarchicalPartition& hp);

// Trees over graph vertices (Steiner nodes allowed), each holding every point
// of the subset once, dominating, with the stated additive bound.
struct AdditiveCover {
  std::vector<RootedTree> trees;
  double additive_bound = 0.0;
};

using AdditiveBuilder = std::function<AdditiveCover(const std::vector<int>& subset, double eps)>;

// Vertices on the Dijkstra paths between every pair of the subset.
std::vector<int> shortest_path_closure(const Graph& g, const std::vector<int>& subset);

// Forest cover of the planar subgraph induced by the shortest-path closure;
// forests become trees through a Steiner hub with edges of the closure's
// diameter, and subset points missing from a forest hang from the hub.
AdditiveBuilder planar_additive_builder(const Graph& g, const Embedding& emb, double t = 0.125,
                                        int threads = 1);

// One shortest-path tree of the closure per subset point; exact.
AdditiveBuilder exact_additive_builder(const Graph& g);

struct MultOptions {
  HpfOptions hpf;
  double inner_eps = -1.0;  // additive builder eps; negative means eps
  int threads = 1;
};

struct MultLevelStats {
  int hierarchy = 0;
  int level = 0;
  double radius = 0.0;
  double additive = 0.0;  // largest certified additive bound among the level's clusters
  double ancestor = 0.0;  // largest tree distance from a point to its ancestor at this level
};

struct MultCover {
  ForestCover cover;  // one tree per forest
  PartitionFamily hppf;
  std::vector<NetHierarchy> nets;
  std::vector<std::vector<MultLevelStats>> levels;  // [hierarchy][level]
  std::vector<int> kappa;                           // trees per hierarchy
  double rho = 0.0;
  double c = 0.0;   // min-tree distance <= (1 + c eps) dist for every pair
  double c0 = 0.0;  // largest ancestor distance over radius
  double a = 0.0;   // largest additive bound over radius
  double eps = 0.0;
};

// HPF, split, nets, per-cluster additive covers glued across scales. c is
// the largest over certificates of rho * (2 r_(j-1) + add_j + 2 A_(j-1)) /
// (eps r_j), with A the measured ancestor distances.
MultCover multiplicative_cover(const Graph& g, double eps, const AdditiveBuilder& builder,
                               const MultOptions& opt = {});

}  // namespace treecover
