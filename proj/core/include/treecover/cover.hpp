#pragma once

#include <limits>
#include <string>
#include <vector>

#include "treecover/graph.hpp"
#include "treecover/shortest_paths.hpp"

namespace treecover {

enum class TreeKind { Spanning, SteinerStar };

// Rooted tree over nodes 0..size-1. Node i stands for graph vertex vertex[i],
// or a Steiner point when vertex[i] == -1.
struct RootedTree {
  TreeKind kind = TreeKind::Spanning;
  int root = 0;
  std::vector<int> vertex;
  std::vector<int> parent;     // -1 at the root
  std::vector<double> weight;  // length of the edge to the parent, 0 at the root

  int size() const { return static_cast<int>(vertex.size()); }
  int add_node(int v, int par, double w) {
    vertex.push_back(v);
    parent.push_back(par);
    weight.push_back(w);
    return size() - 1;
  }
  std::vector<int> vertices() const;  // graph vertices, ascending
};

struct ForestCover {
  std::vector<std::vector<RootedTree>> forests;
  double eps = 0.0;
  double delta = 0.0;
  double additive_bound = 0.0;
  int empty_forests = 0;  // empty slots dropped during construction

  int tree_count() const;
};

// Throws InvariantViolation if parent pointers do not form one rooted tree or
// a graph vertex repeats.
void validate_tree(const RootedTree& t, int vertex_count);

// Merges each multi-tree forest into one tree by hanging every root from a new
// Steiner hub with edges of length `delta`.
ForestCover forests_to_trees(const ForestCover& fc, double delta);

struct CoverCheck {
  double additive_bound = std::numeric_limits<double>::infinity();
  double multiplicative_bound = std::numeric_limits<double>::infinity();
  bool check_root_path = false;      // certifying tree must route through its root
  bool check_disjoint = true;        // trees of one forest share no vertex
  double diameter_bound = std::numeric_limits<double>::infinity();
  double tolerance = 1e-9;           // relative to delta
  int threads = 1;
};

struct CoverReport {
  bool ok = true;
  bool dominating = true;
  bool covered = true;           // every pair has a common tree
  bool within_additive = true;
  bool within_multiplicative = true;
  bool root_paths = true;
  bool spanning = true;
  bool disjoint = true;
  bool diameters = true;
  double worst_slack = 0.0;      // max over pairs of (best tree distance - dist)
  double worst_ratio = 1.0;      // max over pairs of best tree distance / dist
  double worst_root_slack = 0.0;
  double max_tree_diameter = 0.0;
  long pairs = 0;
  int forests = 0;
  int trees = 0;
  std::vector<long> argmin_histogram;  // per forest, pairs it certifies
  std::string first_failure;
};

CoverReport verify_cover(const ForestCover& fc, const Graph& g, const ExactOracle& oracle,
                         const CoverCheck& check);

std::string tree_kind_name(TreeKind k);
TreeKind parse_tree_kind(const std::string& s);

}  // namespace treecover
