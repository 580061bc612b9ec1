#include "treecover/exact_cover.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "treecover/errors.hpp"

namespace treecover {

namespace {

void require_unweighted(const Graph& g) {
  for (const Edge& e : g.edges())
    if (e.w != 1.0) throw InvalidArgument("exact cover needs unit edge weights");
}

std::vector<int> encode(const BfsForest& f) {
  std::vector<int> key;
  for (const BfsTreeSpec& t : f) {
    key.push_back(t.root);
    key.push_back(static_cast<int>(t.vertices.size()));
    key.insert(key.end(), t.vertices.begin(), t.vertices.end());
  }
  return key;
}

// Simple graph on `count` nodes from a list of node pairs; drops loops and repeats.
Graph unit_graph(int count, std::vector<std::pair<int, int>> pairs) {
  for (auto& [a, b] : pairs)
    if (a > b) std::swap(a, b);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<Edge> edges;
  for (auto [a, b] : pairs)
    if (a != b) edges.push_back({a, b, 1.0});
  return Graph(count, std::move(edges));
}

}  // namespace

int degeneracy(const Graph& g, std::vector<int>* order) {
  int n = g.n();
  std::vector<int> deg(n);
  std::set<std::pair<int, int>> queue;
  for (int v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    queue.insert({deg[v], v});
  }
  std::vector<char> removed(n, 0);
  int d = 0;
  if (order) order->clear();
  while (!queue.empty()) {
    auto [dv, v] = *queue.begin();
    queue.erase(queue.begin());
    removed[v] = 1;
    d = std::max(d, dv);
    if (order) order->push_back(v);
    for (const Arc& a : g.arcs(v)) {
      if (removed[a.to]) continue;
      queue.erase({deg[a.to], a.to});
      queue.insert({--deg[a.to], a.to});
    }
  }
  return d;
}

std::vector<StarForest> star_forests(const Graph& g) {
  int n = g.n();
  std::vector<int> order;
  degeneracy(g, &order);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  // parents[i][v]: the i-th later neighbour of v.
  std::vector<std::vector<int>> parents;
  for (int v = 0; v < n; ++v) {
    std::vector<int> later;
    for (const Arc& a : g.arcs(v))
      if (pos[a.to] > pos[v]) later.push_back(a.to);
    std::sort(later.begin(), later.end(), [&](int a, int b) { return pos[a] < pos[b]; });
    for (size_t i = 0; i < later.size(); ++i) {
      if (parents.size() <= i) parents.emplace_back(n, -1);
      parents[i][v] = later[i];
    }
  }
  std::vector<StarForest> out;
  for (const auto& par : parents) {
    std::vector<int> depth(n, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      depth[v] = par[v] < 0 ? 0 : depth[par[v]] + 1;
    }
    for (int parity = 0; parity < 2; ++parity) {
      std::map<int, std::vector<int>> stars;
      for (int v = 0; v < n; ++v)
        if (par[v] >= 0 && depth[par[v]] % 2 == parity) stars[par[v]].push_back(v);
      if (stars.empty()) continue;
      StarForest sf;
      for (auto& [c, leaves] : stars) {
        std::sort(leaves.begin(), leaves.end());
        sf.push_back({c, std::move(leaves)});
      }
      out.push_back(std::move(sf));
    }
  }
  return out;
}

RootedTree bfs_tree(const Graph& g, const BfsTreeSpec& spec) {
  std::vector<int> local(g.n(), -1);
  RootedTree t;
  t.kind = TreeKind::Spanning;
  t.root = 0;
  std::vector<char> in(g.n(), 0);
  for (int v : spec.vertices) in[v] = 1;
  if (spec.root < 0 || spec.root >= g.n() || !in[spec.root])
    throw InvalidArgument("BFS root outside its vertex set");
  local[spec.root] = t.add_node(spec.root, -1, 0.0);
  for (int i = 0; i < t.size(); ++i) {
    int x = t.vertex[i];
    for (const Arc& a : g.arcs(x))
      if (in[a.to] && local[a.to] < 0) local[a.to] = t.add_node(a.to, i, g.edge(a.edge).w);
  }
  if (t.size() != static_cast<int>(spec.vertices.size()))
    throw InvalidArgument("BFS tree vertex set is not connected");
  return t;
}

bool is_bfs_forest(const Graph& g, const BfsForest& f) {
  std::vector<char> used(g.n(), 0);
  for (const BfsTreeSpec& t : f) {
    if (!std::is_sorted(t.vertices.begin(), t.vertices.end())) return false;
    for (int v : t.vertices) {
      if (v < 0 || v >= g.n() || used[v]) return false;
      used[v] = 1;
    }
    try {
      bfs_tree(g, t);
    } catch (const InvalidArgument&) {
      return false;
    }
  }
  return true;
}

std::vector<BfsForest> star_forest_base(const Graph& g) {
  require_unweighted(g);
  std::vector<BfsForest> out;
  for (const StarForest& sf : star_forests(g)) {
    BfsForest f;
    for (const Star& s : sf) {
      BfsTreeSpec t{s.center, s.leaves};
      t.vertices.push_back(s.center);
      std::sort(t.vertices.begin(), t.vertices.end());
      f.push_back(std::move(t));
    }
    std::sort(f.begin(), f.end());
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<BfsForest> root_expansion(const Graph& g, const BfsForest& f) {
  if (!is_bfs_forest(g, f)) throw InvalidArgument("input is not a BFS forest");
  int n = g.n();
  int m = static_cast<int>(f.size());
  std::vector<int> owner(n, -1);
  for (int i = 0; i < m; ++i)
    for (int v : f[i].vertices) owner[v] = i;

  std::vector<std::pair<int, int>> tree_pairs;
  for (const Edge& e : g.edges()) {
    int a = owner[e.u], b = owner[e.v];
    if (a >= 0 && b >= 0 && a != b) tree_pairs.push_back({a, b});
  }
  Graph trees = unit_graph(m, std::move(tree_pairs));
  std::vector<int> order;
  degeneracy(trees, &order);
  std::vector<int> colour(m, -1);
  int colours = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<char> taken(m + 1, 0);
    for (const Arc& a : trees.arcs(*it))
      if (colour[a.to] >= 0) taken[colour[a.to]] = 1;
    int c = 0;
    while (taken[c]) ++c;
    colour[*it] = c;
    colours = std::max(colours, c + 1);
  }

  std::vector<BfsForest> out{f};
  for (int c = 0; c < colours; ++c) {
    // Nodes n + i stand for the trees of colour c; other vertices stay put.
    auto node = [&](int v) { return owner[v] >= 0 && colour[owner[v]] == c ? n + owner[v] : v; };
    std::vector<std::pair<int, int>> pairs;
    for (const Edge& e : g.edges()) pairs.push_back({node(e.u), node(e.v)});
    Graph contracted = unit_graph(n + m, std::move(pairs));
    for (const StarForest& sf : star_forests(contracted)) {
      BfsForest out_f;
      for (const Star& s : sf) {
        BfsTreeSpec t;
        auto expand = [&](int x) {
          if (x >= n)
            t.vertices.insert(t.vertices.end(), f[x - n].vertices.begin(), f[x - n].vertices.end());
          else
            t.vertices.push_back(x);
        };
        t.root = s.center >= n ? f[s.center - n].root : s.center;
        expand(s.center);
        for (int x : s.leaves) expand(x);
        std::sort(t.vertices.begin(), t.vertices.end());
        out_f.push_back(std::move(t));
      }
      std::sort(out_f.begin(), out_f.end());
      out.push_back(std::move(out_f));
    }
  }
  return out;
}

bool preserves(const std::vector<BfsForest>& forests, const std::vector<int>& path) {
  if (path.empty()) return true;
  std::vector<int> sorted = path;
  std::sort(sorted.begin(), sorted.end());
  for (const BfsForest& f : forests)
    for (const BfsTreeSpec& t : f) {
      if (!std::binary_search(t.vertices.begin(), t.vertices.end(), path.front())) continue;
      if (std::find(path.begin(), path.end(), t.root) == path.end()) continue;
      if (std::includes(t.vertices.begin(), t.vertices.end(), sorted.begin(), sorted.end()))
        return true;
    }
  return false;
}

std::vector<BfsForest> exact_cover_forests(const Graph& g, int max_len, const ExactCoverOptions& opt) {
  require_unweighted(g);
  if (max_len < 1) max_len = 1;
  std::vector<BfsForest> level = star_forest_base(g);
  std::set<std::vector<int>> seen;
  for (const BfsForest& f : level) seen.insert(encode(f));
  if (static_cast<int>(level.size()) > opt.max_forests)
    throw ConstructionFailure("exact cover exceeds the forest cap");
  std::vector<BfsForest> fresh = level;
  for (int k = 2; k <= max_len && !fresh.empty(); ++k) {
    // Forests already expanded produce the same output again.
    std::vector<std::vector<BfsForest>> parts(fresh.size());
    parallel_for(static_cast<int>(fresh.size()), opt.threads,
                 [&](int i) { parts[i] = root_expansion(g, fresh[i]); });
    std::vector<BfsForest> next;
    for (auto& part : parts)
      for (BfsForest& f : part) {
        if (f.empty() || !seen.insert(encode(f)).second) continue;
        next.push_back(std::move(f));
        if (static_cast<int>(seen.size()) > opt.max_forests)
          throw ConstructionFailure("exact cover exceeds the forest cap of " +
                                    std::to_string(opt.max_forests));
      }
    level.insert(level.end(), next.begin(), next.end());
    fresh = std::move(next);
  }
  return level;
}

ForestCover exact_cover(const Graph& g, int max_len, const ExactCoverOptions& opt) {
  std::vector<BfsForest> forests = exact_cover_forests(g, max_len, opt);
  ForestCover fc;
  fc.forests.resize(forests.size());
  parallel_for(static_cast<int>(forests.size()), opt.threads, [&](int i) {
    for (const BfsTreeSpec& t : forests[i]) fc.forests[i].push_back(bfs_tree(g, t));
  });
  return fc;
}

Graph cluster_graph_as_graph(const ClusterGraph& cg) {
  std::vector<Edge> edges;
  for (int a = 0; a < cg.size(); ++a)
    for (int b : cg.adj[a])
      if (a < b) edges.push_back({a, b, 1.0});
  return Graph(cg.size(), std::move(edges));
}

int shortest_path_hops(const Graph& g, const Partition& p, int threads) {
  ClusterGraph cg = build_cluster_graph(g, p.cluster_of, p.size());
  std::vector<int> worst(g.n(), 0);
  parallel_for(g.n(), threads, [&](int u) {
    ShortestPathTree sp = dijkstra(g, u);
    for (int v = u + 1; v < g.n(); ++v)
      if (sp.reached(v)) worst[u] = std::max(worst[u], path_cost(p, cg, sp.path_to(v)));
  });
  return g.n() == 0 ? 0 : *std::max_element(worst.begin(), worst.end());
}

RootedTree star_transform(const BfsTreeSpec& cluster_tree, const Partition& p,
                          const std::vector<double>& dist_from_center) {
  const auto& root_cluster = p.clusters.at(cluster_tree.root).vertices;
  if (root_cluster.empty()) throw InvalidArgument("empty root cluster");
  int r = root_cluster.front();
  RootedTree t;
  t.kind = TreeKind::SteinerStar;
  t.root = t.add_node(r, -1, 0.0);
  std::vector<int> members;
  for (int c : cluster_tree.vertices) {
    const auto& vs = p.clusters.at(c).vertices;
    members.insert(members.end(), vs.begin(), vs.end());
  }
  std::sort(members.begin(), members.end());
  for (int v : members) {
    if (v == r) continue;
    if (!(dist_from_center[v] < kInf)) throw InvalidArgument("star leaf unreachable from its center");
    t.add_node(v, t.root, dist_from_center[v]);
  }
  return t;
}

PartitionCover partition_to_cover(const Graph& g, const Partition& p, int hops,
                                  const ExactCoverOptions& opt) {
  PartitionCover out;
  out.hops = hops < 0 ? shortest_path_hops(g, p, opt.threads) : hops;
  ClusterGraph cg = build_cluster_graph(g, p.cluster_of, p.size());
  Graph cgg = cluster_graph_as_graph(cg);
  std::vector<BfsForest> forests = exact_cover_forests(cgg, std::max(out.hops, 1), opt);
  out.cluster_forests = static_cast<int>(forests.size());

  std::vector<int> roots;
  for (const BfsForest& f : forests)
    for (const BfsTreeSpec& t : f) roots.push_back(t.root);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<std::vector<double>> dist(p.size());
  parallel_for(static_cast<int>(roots.size()), opt.threads, [&](int i) {
    int c = roots[i];
    dist[c] = dijkstra(g, p.clusters[c].vertices.front()).dist;
  });

  ForestCover& fc = out.cover;
  fc.eps = p.eps;
  fc.delta = p.delta;
  fc.forests.resize(forests.size());
  parallel_for(static_cast<int>(forests.size()), opt.threads, [&](int i) {
    for (const BfsTreeSpec& t : forests[i])
      fc.forests[i].push_back(star_transform(t, p, dist[t.root]));
  });
  PartitionReport pr = verify_clusters(g, p, kInf, opt.threads);
  if (!pr.total || !pr.connected) throw InvalidArgument("partition clusters are not connected");
  fc.additive_bound = 2.0 * pr.max_cluster_diameter;
  return out;
}

}  // namespace treecover
