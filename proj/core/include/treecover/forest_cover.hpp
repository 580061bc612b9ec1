#pragma once

#include <vector>

#include "treecover/cover.hpp"
#include "treecover/gridtree.hpp"
#include "treecover/shortcut_partition.hpp"

namespace treecover {

inline constexpr double kGamma = 4.0;  // cluster diameter factor

struct CoverGrouping {
  int index_modulus = 0;  // centers of one column sharing a forest are this many positions apart
  int level_modulus = 0;  // columns sharing a forest are this many levels apart
  double ball_radius = 0.0;

  int slots() const { return index_modulus * level_modulus; }
};

// Group counts for a hierarchy of width t * eps * delta: ceil((3 gamma + 2) / eps)
// center positions and ceil((gamma + 2) / (t eps)) column levels.
CoverGrouping cover_grouping(double eps, double t, double delta);

// Forests for one hierarchy node, indexed by slot level * index_modulus + index.
// Slots without trees are empty.
std::vector<std::vector<RootedTree>> cover_gridtree(const Graph& g, const GridtreeHierarchy& h, int node,
                                                    const Partition& p, const CoverGrouping& grouping,
                                                    int threads = 1);

// Unions the per-node forests layer by layer. Empty slots are dropped and
// counted in empty_forests.
ForestCover cover_hierarchy(const Graph& g, const GridtreeHierarchy& h, const Partition& p, int threads = 1);

struct PlanarCover {
  PlanarPartition partition;
  ForestCover cover;
  int slots = 0;  // layers times slots per node, before dropping empty ones
};

PlanarCover build_planar_cover(const Graph& g, const Embedding& emb, double eps, double t, double delta,
                               int threads = 1);

}  // namespace treecover
