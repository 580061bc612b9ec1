#include "treecover/shortest_paths.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <tuple>

#include "treecover/errors.hpp"

namespace treecover {

std::vector<int> ShortestPathTree::path_to(int v) const {
  std::vector<int> path;
  if (!reached(v)) return path;
  for (int x = v; x >= 0; x = parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPathTree dijkstra(const Graph& g, int source, const std::vector<char>* scope,
                          std::optional<double> radius) {
  if (source < 0 || source >= g.n()) throw InvalidArgument("source out of range");
  if (scope && !(*scope)[source]) throw InvalidArgument("source outside scope");
  if (radius && *radius < 0) throw InvalidArgument("negative radius");
  ShortestPathTree t;
  t.source = source;
  t.parent.assign(g.n(), -1);
  t.dist.assign(g.n(), kInf);
  std::vector<char> done(g.n(), 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  t.dist[source] = 0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (done[v] || d > t.dist[v]) continue;
    done[v] = 1;
    t.order.push_back(v);
    for (const Arc& a : g.arcs(v)) {
      if (scope && !(*scope)[a.to]) continue;
      if (done[a.to]) continue;
      double nd = d + g.edge(a.edge).w;
      if (radius && nd > *radius) continue;
      if (nd < t.dist[a.to] || (nd == t.dist[a.to] && v < t.parent[a.to])) {
        bool improved = nd < t.dist[a.to];
        t.dist[a.to] = nd;
        t.parent[a.to] = v;
        if (improved) pq.push({nd, a.to});
      }
    }
  }
  return t;
}

LabelledForest labelled_dijkstra(const Graph& g, const std::vector<MultiSource>& sources,
                                 const std::vector<char>* scope, std::optional<double> radius) {
  LabelledForest f;
  f.dist.assign(g.n(), kInf);
  f.label.assign(g.n(), -1);
  f.parent.assign(g.n(), -1);
  std::vector<char> done(g.n(), 0);
  using Item = std::tuple<double, int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto better = [&](double d, int label, int v) {
    return d < f.dist[v] || (d == f.dist[v] && label < f.label[v]);
  };
  for (const MultiSource& s : sources) {
    if (scope && !(*scope)[s.vertex]) throw InvalidArgument("source outside scope");
    if (better(s.dist, s.label, s.vertex)) {
      f.dist[s.vertex] = s.dist;
      f.label[s.vertex] = s.label;
      f.parent[s.vertex] = -1;
      pq.push({s.dist, s.label, s.vertex});
    }
  }
  while (!pq.empty()) {
    auto [d, label, v] = pq.top();
    pq.pop();
    if (done[v] || d != f.dist[v] || label != f.label[v]) continue;
    done[v] = 1;
    f.order.push_back(v);
    for (const Arc& a : g.arcs(v)) {
      if (scope && !(*scope)[a.to]) continue;
      if (done[a.to]) continue;
      double nd = d + g.edge(a.edge).w;
      if (radius && nd > *radius) continue;
      if (better(nd, label, a.to) ||
          (nd == f.dist[a.to] && label == f.label[a.to] && v < f.parent[a.to])) {
        bool requeue = better(nd, label, a.to);
        f.dist[a.to] = nd;
        f.label[a.to] = label;
        f.parent[a.to] = v;
        if (requeue) pq.push({nd, label, a.to});
      }
    }
  }
  return f;
}

std::vector<int> bfs_hops(const Graph& g, int source, const std::vector<char>* scope) {
  std::vector<int> hops(g.n(), -1);
  std::vector<int> queue{source};
  hops[source] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (const Arc& a : g.arcs(v))
      if ((!scope || (*scope)[a.to]) && hops[a.to] < 0) {
        hops[a.to] = hops[v] + 1;
        queue.push_back(a.to);
      }
  }
  return hops;
}

namespace {

double eccentricity(const ShortestPathTree& t, int* far) {
  double best = 0;
  *far = t.source;
  for (int v = 0; v < static_cast<int>(t.dist.size()); ++v)
    if (t.dist[v] > best) {
      best = t.dist[v];
      *far = v;
    }
  return best;
}

}  // namespace

double diameter(const Graph& g, bool exact, int threads) {
  require_connected(g);
  if (exact) {
    std::vector<double> ecc(g.n(), 0);
    parallel_for(g.n(), threads, [&](int s) {
      int far;
      ecc[s] = eccentricity(dijkstra(g, s), &far);
    });
    return *std::max_element(ecc.begin(), ecc.end());
  }
  int far;
  eccentricity(dijkstra(g, 0), &far);
  int far2;
  double d = eccentricity(dijkstra(g, far), &far2);
  return d;
}

ExactOracle::ExactOracle(const Graph& g, int threads, int cap) : n_(g.n()) {
  if (g.n() > cap)
    throw InvalidArgument("exact oracle cap exceeded: n=" + std::to_string(g.n()) +
                          " cap=" + std::to_string(cap));
  require_connected(g);
  d_.assign(static_cast<size_t>(n_) * n_, 0.0);
  parallel_for(n_, threads, [&](int s) {
    ShortestPathTree t = dijkstra(g, s);
    std::copy(t.dist.begin(), t.dist.end(), d_.begin() + static_cast<size_t>(s) * n_);
  });
  diameter_ = d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

}  // namespace treecover
