#pragma once

#include <string>
#include <vector>

#include "treecover/cover.hpp"
#include "treecover/graph.hpp"
#include "treecover/planar.hpp"
#include "treecover/shortcut_partition.hpp"
#include "treecover/tree_decomposition.hpp"

namespace treecover {

// Each cluster becomes a star around its smallest vertex; clusters joined by
// an edge of g get an edge between their centers. Weights are graph distances.
Graph contract_to_stars(const Graph& g, const Partition& p, int threads = 1);

// Min-fill elimination decomposition.
TreeDecomposition decompose(const Graph& gprime);

// Per tree of each forest: the clusters it meets, spanned by a BFS tree of
// gprime from the same root. Throws InvalidArgument if two trees of one forest
// meet the same cluster.
std::vector<std::vector<RootedTree>> translate_forests(const ForestCover& fc, const Graph& gprime,
                                                       const Partition& p);

// Every bag holding v also receives the roots of the trees containing v.
TreeDecomposition extend_decomposition(const TreeDecomposition& td,
                                       const std::vector<std::vector<RootedTree>>& forests);

struct TwEmbedding {
  Graph host;                 // vertices 0..n-1 are the input vertices
  TreeDecomposition decomposition;
  int contracted_width = 0;   // heuristic width of the star-contracted graph
  int forests = 0;
  int width = 0;
  double additive_bound = 0.0;
  double eps = 0.0;
  double delta = 0.0;
};

// Shortcut partition, forest cover, star contraction, root edges weighted by
// graph distance, then the extended decomposition.
TwEmbedding embed(const Graph& g, const Embedding& emb, double eps, double delta, double t = 0.125,
                  int threads = 1);

struct EmbeddingReport {
  bool ok = true;
  bool valid_decomposition = true;
  bool dominating = true;
  bool within_additive = true;
  bool width_bound = true;
  double worst_slack = 0.0;
  double worst_undercut = 0.0;
  long pairs = 0;
  std::string first_failure;
};

EmbeddingReport verify_embedding(const TwEmbedding& e, const Graph& g, const ExactOracle& oracle,
                                 int threads = 1);

}  // namespace treecover
