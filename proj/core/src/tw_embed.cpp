#include "treecover/tw_embed.hpp"

#include <algorithm>
#include <map>

#include "treecover/errors.hpp"
#include "treecover/forest_cover.hpp"

namespace treecover {

Graph contract_to_stars(const Graph& g, const Partition& p, int threads) {
  if (static_cast<int>(p.cluster_of.size()) != g.n()) throw InvalidArgument("partition does not match the graph");
  std::vector<int> center(p.size());
  for (int c = 0; c < p.size(); ++c) {
    if (p.clusters[c].vertices.empty()) throw InvalidArgument("empty cluster");
    center[c] = p.clusters[c].vertices.front();
  }
  std::vector<std::vector<double>> dist(p.size());
  parallel_for(p.size(), threads, [&](int c) { dist[c] = dijkstra(g, center[c]).dist; });
  std::vector<Edge> edges;
  for (int c = 0; c < p.size(); ++c)
    for (int v : p.clusters[c].vertices)
      if (v != center[c]) edges.push_back({center[c], v, dist[c][v]});
  ClusterGraph cg = build_cluster_graph(g, p.cluster_of, p.size());
  for (int a = 0; a < cg.size(); ++a)
    for (int b : cg.adj[a])
      if (a < b) edges.push_back({center[a], center[b], dist[a][center[b]]});
  return Graph(g.n(), std::move(edges));
}

TreeDecomposition decompose(const Graph& gprime) { return min_fill_decomposition(gprime); }

std::vector<std::vector<RootedTree>> translate_forests(const ForestCover& fc, const Graph& gprime,
                                                       const Partition& p) {
  std::vector<std::vector<RootedTree>> out;
  std::vector<int> owner(p.size(), -1);
  std::vector<char> in(gprime.n(), 0);
  int stamp = 0;
  for (const auto& forest : fc.forests) {
    std::vector<RootedTree> translated;
    ++stamp;
    for (size_t ti = 0; ti < forest.size(); ++ti) {
      const RootedTree& t = forest[ti];
      int root = t.vertex[t.root];
      if (root < 0) throw InvalidArgument("tree root is a Steiner point");
      std::vector<int> clusters;
      for (int v : t.vertex)
        if (v >= 0) clusters.push_back(p.cluster_of[v]);
      std::sort(clusters.begin(), clusters.end());
      clusters.erase(std::unique(clusters.begin(), clusters.end()), clusters.end());
      int tag = stamp * 1000003 + static_cast<int>(ti);
      for (int c : clusters) {
        if (owner[c] >= stamp * 1000003 && owner[c] != tag)
          throw InvalidArgument("two trees of one forest meet cluster " + std::to_string(c));
        owner[c] = tag;
      }
      std::vector<int> members;
      for (int c : clusters)
        for (int v : p.clusters[c].vertices) {
          in[v] = 1;
          members.push_back(v);
        }
      RootedTree tp;
      tp.kind = TreeKind::Spanning;
      std::vector<int> node(gprime.n(), -1);
      node[root] = tp.add_node(root, -1, 0.0);
      tp.root = node[root];
      for (int i = 0; i < tp.size(); ++i) {
        int x = tp.vertex[i];
        for (const Arc& a : gprime.arcs(x))
          if (in[a.to] && node[a.to] < 0) node[a.to] = tp.add_node(a.to, i, gprime.edge(a.edge).w);
      }
      for (int v : members) in[v] = 0;
      if (tp.size() != static_cast<int>(members.size()))
        throw InvariantViolation("translated vertex set is not connected");
      translated.push_back(std::move(tp));
    }
    out.push_back(std::move(translated));
  }
  return out;
}

TreeDecomposition extend_decomposition(const TreeDecomposition& td,
                                       const std::vector<std::vector<RootedTree>>& forests) {
  std::vector<std::vector<int>> roots(td.vertex_count);
  for (const auto& forest : forests) {
    std::vector<char> used(td.vertex_count, 0);
    for (const RootedTree& t : forest) {
      int r = t.vertex[t.root];
      for (int v : t.vertex) {
        if (v < 0) continue;
        if (v >= td.vertex_count) throw InvalidArgument("tree vertex outside the decomposition");
        if (used[v]) throw InvalidArgument("trees of one forest share vertex " + std::to_string(v));
        used[v] = 1;
        roots[v].push_back(r);
      }
    }
  }
  TreeDecomposition out = td;
  for (auto& bag : out.bags) {
    std::vector<int> grown = bag;
    for (int v : bag) grown.insert(grown.end(), roots[v].begin(), roots[v].end());
    std::sort(grown.begin(), grown.end());
    grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
    bag = std::move(grown);
  }
  return out;
}

TwEmbedding embed(const Graph& g, const Embedding& emb, double eps, double delta, double t, int threads) {
  TwEmbedding out;
  out.eps = eps;
  out.delta = delta;
  PlanarCover pc = build_planar_cover(g, emb, eps, t, delta, threads);
  const Partition& p = pc.partition.partition;
  Graph gprime = contract_to_stars(g, p, threads);
  TreeDecomposition td = decompose(gprime);
  out.contracted_width = td.width();
  auto translated = translate_forests(pc.cover, gprime, p);
  out.forests = static_cast<int>(translated.size());

  std::vector<int> roots;
  for (const auto& forest : pc.cover.forests)
    for (const RootedTree& tr : forest) roots.push_back(tr.vertex[tr.root]);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<std::vector<double>> dist(roots.size());
  parallel_for(static_cast<int>(roots.size()), threads, [&](int i) { dist[i] = dijkstra(g, roots[i]).dist; });
  std::map<std::pair<int, int>, double> edges;
  for (const Edge& e : gprime.edges()) edges[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.w;
  for (const auto& forest : pc.cover.forests)
    for (const RootedTree& tr : forest) {
      int r = tr.vertex[tr.root];
      size_t ri = std::lower_bound(roots.begin(), roots.end(), r) - roots.begin();
      for (int v : tr.vertex)
        if (v >= 0 && v != r) edges.emplace(std::make_pair(std::min(r, v), std::max(r, v)), dist[ri][v]);
    }
  std::vector<Edge> list;
  for (auto& [key, w] : edges) list.push_back({key.first, key.second, w});
  out.host = Graph(g.n(), std::move(list));
  out.decomposition = extend_decomposition(td, translated);
  out.width = out.decomposition.width();
  out.additive_bound = pc.cover.additive_bound;
  return out;
}

EmbeddingReport verify_embedding(const TwEmbedding& e, const Graph& g, const ExactOracle& oracle, int threads) {
  EmbeddingReport r;
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    r.ok = false;
    if (r.first_failure.empty()) r.first_failure = msg;
  };
  try {
    validate_decomposition(e.host, e.decomposition);
  } catch (const InvariantViolation& ex) {
    fail(r.valid_decomposition, ex.what());
  }
  long bound = static_cast<long>(e.forests + 1) * (e.contracted_width + 1);
  if (e.width > bound)
    fail(r.width_bound, "width " + std::to_string(e.width) + " exceeds " + std::to_string(bound));
  int n = g.n();
  if (e.host.n() < n) {
    fail(r.dominating, "host graph lacks input vertices");
    return r;
  }
  double tol = 1e-9 * std::max(1.0, oracle.diameter());
  std::vector<double> slack(n, 0.0), under(n, 0.0);
  parallel_for(n, threads, [&](int u) {
    ShortestPathTree sp = dijkstra(e.host, u);
    for (int v = u + 1; v < n; ++v) {
      double d = sp.dist[v] - oracle(u, v);
      slack[u] = std::max(slack[u], d);
      under[u] = std::max(under[u], -d);
    }
  });
  for (int u = 0; u < n; ++u) {
    r.pairs += n - 1 - u;
    r.worst_slack = std::max(r.worst_slack, slack[u]);
    r.worst_undercut = std::max(r.worst_undercut, under[u]);
  }
  if (r.worst_undercut > tol) fail(r.dominating, "host distance undercuts the graph by " + std::to_string(r.worst_undercut));
  if (r.worst_slack > e.additive_bound + tol)
    fail(r.within_additive, "host distance exceeds the graph by " + std::to_string(r.worst_slack));
  return r;
}

}  // namespace treecover
