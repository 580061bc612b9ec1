#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "treecover/graph.hpp"

namespace treecover {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ShortestPathTree {
  int source = -1;
  std::vector<int> parent;   // -1 for the source and unreached vertices
  std::vector<double> dist;  // kInf for unreached vertices
  std::vector<int> order;    // settled vertices in settle order

  bool reached(int v) const { return dist[v] < kInf; }
  // Vertex sequence source .. v.
  std::vector<int> path_to(int v) const;
};

// Dijkstra restricted to g[scope], truncated at `radius`. Ties in distance
// settle the smaller vertex id first; parent ties prefer the smaller id.
ShortestPathTree dijkstra(const Graph& g, int source, const std::vector<char>* scope = nullptr,
                          std::optional<double> radius = std::nullopt);

struct MultiSource {
  int vertex = 0;
  double dist = 0.0;
  int label = 0;  // smaller label wins distance ties
};

struct LabelledForest {
  std::vector<double> dist;
  std::vector<int> label;   // -1 when unreached
  std::vector<int> parent;  // -1 at sources / unreached
  std::vector<int> order;
};

// Multi-source Dijkstra ordered by (distance, label, vertex). Every vertex gets
// the label of the lexicographically first source reaching it.
LabelledForest labelled_dijkstra(const Graph& g, const std::vector<MultiSource>& sources,
                                 const std::vector<char>* scope = nullptr,
                                 std::optional<double> radius = std::nullopt);

// Unweighted BFS distances (edge count); -1 for unreached.
std::vector<int> bfs_hops(const Graph& g, int source, const std::vector<char>* scope = nullptr);

double diameter(const Graph& g, bool exact, int threads = 1);

class ExactOracle {
 public:
  static constexpr int kDefaultCap = 5000;
  ExactOracle() = default;
  explicit ExactOracle(const Graph& g, int threads = 1, int cap = kDefaultCap);

  int n() const { return n_; }
  double operator()(int u, int v) const { return d_[static_cast<size_t>(u) * n_ + v]; }
  const double* row(int u) const { return d_.data() + static_cast<size_t>(u) * n_; }
  double diameter() const { return diameter_; }

 private:
  int n_ = 0;
  double diameter_ = 0.0;
  std::vector<double> d_;
};

// Run fn(i) for i in [0, count) on up to `threads` workers. Results must be
// written to disjoint slots so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn);

}  // namespace treecover

#include "treecover/detail/parallel.hpp"
