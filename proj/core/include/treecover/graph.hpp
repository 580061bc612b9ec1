#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace treecover {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

struct Arc {
  int to = 0;
  int edge = 0;
};

// Undirected weighted simple graph on vertices 0..n-1.
// Adjacency lists are sorted by neighbor id.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Arc> arcs(int v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  int other(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }
  // Edge id joining u and v, or -1.
  int find_edge(int u, int v) const;
  double min_weight() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<Arc> arcs_;
};

bool is_connected(const Graph& g);
// Connectivity of g restricted to vertices with mask[v] != 0.
bool is_connected(const Graph& g, const std::vector<char>& mask);
void require_connected(const Graph& g);

// Induced subgraph with ids relabelled by position in `vertices`.
struct Subgraph {
  Graph graph;
  std::vector<int> to_parent;     // local vertex -> parent vertex
  std::vector<int> from_parent;   // parent vertex -> local vertex or -1
  std::vector<int> edge_to_parent;
};

Subgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

std::vector<char> make_mask(int n, const std::vector<int>& vertices);

}  // namespace treecover
