#include "treecover/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "treecover/errors.hpp"

namespace treecover {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw InvalidArgument("edge endpoint out of range");
    if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
    if (!std::isfinite(e.w) || e.w < 0) throw InvalidArgument("edge weight must be finite and >= 0");
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (int v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  arcs_.resize(offsets_[n]);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (int e = 0; e < m(); ++e) {
    arcs_[fill[edges_[e].u]++] = {edges_[e].v, e};
    arcs_[fill[edges_[e].v]++] = {edges_[e].u, e};
  }
  for (int v = 0; v < n; ++v) {
    auto first = arcs_.begin() + offsets_[v];
    auto last = arcs_.begin() + offsets_[v + 1];
    std::sort(first, last, [](const Arc& a, const Arc& b) { return a.to < b.to; });
    for (auto it = first; it + 1 < last; ++it)
      if (it->to == (it + 1)->to)
        throw InvalidArgument("parallel edges between " + std::to_string(v) + " and " +
                              std::to_string(it->to));
  }
}

int Graph::find_edge(int u, int v) const {
  auto a = arcs(u);
  auto it = std::lower_bound(a.begin(), a.end(), v, [](const Arc& x, int t) { return x.to < t; });
  return (it != a.end() && it->to == v) ? it->edge : -1;
}

double Graph::min_weight() const {
  double w = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) w = std::min(w, e.w);
  return w;
}

bool is_connected(const Graph& g, const std::vector<char>& mask) {
  int start = -1, total = 0;
  for (int v = 0; v < g.n(); ++v)
    if (mask[v]) {
      ++total;
      if (start < 0) start = v;
    }
  if (total <= 1) return true;
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const Arc& a : g.arcs(v))
      if (mask[a.to] && !seen[a.to]) {
        seen[a.to] = 1;
        ++count;
        stack.push_back(a.to);
      }
  }
  return count == total;
}

bool is_connected(const Graph& g) { return is_connected(g, std::vector<char>(g.n(), 1)); }

void require_connected(const Graph& g) {
  if (g.n() == 0) throw InvalidArgument("empty graph");
  if (!is_connected(g)) throw InvalidArgument("graph is disconnected");
}

std::vector<char> make_mask(int n, const std::vector<int>& vertices) {
  std::vector<char> mask(n, 0);
  for (int v : vertices) mask[v] = 1;
  return mask;
}

Subgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  Subgraph s;
  s.to_parent = vertices;
  s.from_parent.assign(g.n(), -1);
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    if (s.from_parent[vertices[i]] >= 0) throw InvalidArgument("duplicate vertex in subset");
    s.from_parent[vertices[i]] = i;
  }
  std::vector<Edge> edges;
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    int a = s.from_parent[ed.u], b = s.from_parent[ed.v];
    if (a >= 0 && b >= 0) {
      edges.push_back({a, b, ed.w});
      s.edge_to_parent.push_back(e);
    }
  }
  s.graph = Graph(static_cast<int>(vertices.size()), std::move(edges));
  return s;
}

}  // namespace treecover
