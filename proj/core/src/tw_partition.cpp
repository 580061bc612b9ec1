#include "treecover/tw_partition.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "treecover/errors.hpp"

namespace treecover {

namespace {

void root_tree(const TreeDecomposition& td, std::vector<int>& parent, std::vector<int>& depth) {
  int nb = static_cast<int>(td.bags.size());
  parent.assign(nb, -1);
  depth.assign(nb, -1);
  if (nb == 0) return;
  auto adj = td.tree_adjacency();
  std::vector<int> queue{0};
  depth[0] = 0;
  for (size_t i = 0; i < queue.size(); ++i)
    for (int y : adj[queue[i]])
      if (depth[y] < 0) {
        depth[y] = depth[queue[i]] + 1;
        parent[y] = queue[i];
        queue.push_back(y);
      }
}

}  // namespace

PreprocessedInstance preprocess(const Graph& g, const TreeDecomposition& td, int threads) {
  validate_decomposition(g, td);
  PreprocessedInstance pi;
  root_tree(td, pi.bag_parent, pi.bag_depth);
  int nb = static_cast<int>(td.bags.size());
  pi.bag_copies.resize(nb);
  for (int b = 0; b < nb; ++b)
    for (int v : td.bags[b]) {
      pi.bag_copies[b].push_back(static_cast<int>(pi.copy_of.size()));
      pi.copy_of.push_back(v);
      pi.bag_of.push_back(b);
    }
  std::vector<std::vector<double>> dist(g.n());
  parallel_for(g.n(), threads, [&](int v) { dist[v] = dijkstra(g, v).dist; });
  std::vector<Edge> edges;
  for (int b = 0; b < nb; ++b) {
    const auto& cs = pi.bag_copies[b];
    for (size_t i = 0; i < cs.size(); ++i)
      for (size_t j = i + 1; j < cs.size(); ++j) {
        double w = dist[pi.copy_of[cs[i]]][pi.copy_of[cs[j]]];
        if (!(w < kInf)) throw InvalidArgument("graph is disconnected");
        edges.push_back({cs[i], cs[j], w});
      }
    int p = pi.bag_parent[b];
    if (p < 0) continue;
    for (int c : cs)
      for (int d : pi.bag_copies[p])
        if (pi.copy_of[c] == pi.copy_of[d]) edges.push_back({d, c, 0.0});
  }
  pi.graph = Graph(static_cast<int>(pi.copy_of.size()), std::move(edges));
  return pi;
}

Partition finalize_clusters(const Graph& g, std::vector<int> centers, double eps, double delta) {
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  std::vector<MultiSource> sources;
  for (int i = 0; i < static_cast<int>(centers.size()); ++i) sources.push_back({centers[i], 0.0, i});
  LabelledForest f = labelled_dijkstra(g, sources);
  Partition p;
  p.eps = eps;
  p.delta = delta;
  p.cluster_of = f.label;
  p.clusters.resize(centers.size());
  for (int i = 0; i < static_cast<int>(centers.size()); ++i) p.clusters[i].center = centers[i];
  for (int v = 0; v < g.n(); ++v)
    if (p.cluster_of[v] < 0) throw InvalidArgument("vertex " + std::to_string(v) + " reaches no center");
  rebuild_cluster_vertices(p);
  return p;
}

TwClustering tw_cluster(const Graph& g, const TreeDecomposition& td, double eps, double delta) {
  if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0, 1)");
  validate_decomposition(g, td);
  require_connected(g);
  TwClustering out;
  out.width = td.width();
  root_tree(td, out.bag_parent, out.bag_depth);
  int nb = static_cast<int>(td.bags.size());
  auto adj = td.tree_adjacency();
  std::vector<int> offset(nb + 1, 0);
  for (int b = 0; b < nb; ++b) offset[b + 1] = offset[b] + static_cast<int>(td.bags[b].size());
  std::vector<char> clustered(offset[nb], 0);
  double radius = eps * delta;
  double tol = 1e-9 * std::max(1.0, delta);
  std::vector<std::vector<char>> ball(g.n());
  auto ball_of = [&](int u) -> const std::vector<char>& {
    if (ball[u].empty()) {
      ShortestPathTree sp = dijkstra(g, u, nullptr, radius + tol);
      ball[u].assign(g.n(), 0);
      for (int v : sp.order) ball[u][v] = 1;
    }
    return ball[u];
  };
  std::vector<int> centers;
  std::vector<int> in_sub(nb, 0), touched(nb, 0), comp(nb, 0);
  int stamp = 0;

  for (int round = out.width + 1; round >= 1; --round) {
    std::vector<std::vector<int>> pending;
    std::vector<int> all(nb);
    for (int b = 0; b < nb; ++b) all[b] = b;
    if (nb > 0) pending.push_back(std::move(all));
    while (!pending.empty()) {
      std::vector<int> sub = std::move(pending.back());
      pending.pop_back();
      ++stamp;
      for (int b : sub) in_sub[b] = stamp;
      int root = *std::min_element(sub.begin(), sub.end(), [&](int a, int b) {
        return out.bag_depth[a] != out.bag_depth[b] ? out.bag_depth[a] < out.bag_depth[b] : a < b;
      });
      RootBag rb{round, root, {}};
      std::vector<int> hit;
      for (size_t j = 0; j < td.bags[root].size(); ++j) {
        if (clustered[offset[root] + j]) continue;
        int u = td.bags[root][j];
        rb.centers.push_back(u);
        const std::vector<char>& bu = ball_of(u);
        for (int b : sub)
          for (size_t q = 0; q < td.bags[b].size(); ++q)
            if (!clustered[offset[b] + q] && bu[td.bags[b][q]]) {
              clustered[offset[b] + q] = 1;
              if (touched[b] != stamp) {
                touched[b] = stamp;
                hit.push_back(b);
              }
            }
      }
      if (rb.centers.empty()) {
        touched[root] = stamp;
        hit = {root};
      } else {
        centers.insert(centers.end(), rb.centers.begin(), rb.centers.end());
        out.root_bags.push_back(std::move(rb));
      }
      // Connectivity of the touched bags inside the subtree.
      {
        std::vector<int> stack{root};
        int seen = 1;
        comp[root] = -stamp;
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          for (int y : adj[x])
            if (in_sub[y] == stamp && touched[y] == stamp && comp[y] != -stamp) {
              comp[y] = -stamp;
              ++seen;
              stack.push_back(y);
            }
        }
        if (seen != static_cast<int>(hit.size())) ++out.disconnected_touch_sets;
      }
      for (int s : sub) {
        if (touched[s] == stamp || comp[s] == stamp) continue;
        std::vector<int> part{s};
        comp[s] = stamp;
        for (size_t i = 0; i < part.size(); ++i)
          for (int y : adj[part[i]])
            if (in_sub[y] == stamp && touched[y] != stamp && comp[y] != stamp) {
              comp[y] = stamp;
              part.push_back(y);
            }
        std::sort(part.begin(), part.end());
        pending.push_back(std::move(part));
      }
    }
    out.unclustered_after_round.push_back(
        static_cast<int>(std::count(clustered.begin(), clustered.end(), 0)));
  }
  if (!out.unclustered_after_round.empty() && out.unclustered_after_round.back() > 0)
    throw InvariantViolation(std::to_string(out.unclustered_after_round.back()) +
                             " bag copies unclustered after all rounds");
  out.partition = finalize_clusters(g, centers, eps, delta);
  return out;
}

double hop_recurrence(int k, double eps, int i) {
  double a = (k + 1) * (1.0 / eps + 3);
  double j = k + 1;
  for (int r = 2; r <= i; ++r) j = (a + 1) * j + a;
  return j;
}

PartitionReport verify_tw_partition(const Graph& g, const TwClustering& c, const TwPartitionCheck& check) {
  const Partition& p = c.partition;
  double unit = p.eps * p.delta;
  PartitionReport r = verify_clusters(g, p, check.diameter_factor * unit, check.threads);
  if (!r.total) return r;
  double tol = check.tolerance * std::max(1.0, p.delta);
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    r.ok = false;
    if (r.failures.size() < 20) r.failures.push_back(msg);
  };
  ClusterGraph cg = build_cluster_graph(g, p.cluster_of, p.size());
  r.cluster_graph_hop_diameter = hop_diameter(cg);

  for (size_t i = 1; i < c.unclustered_after_round.size(); ++i)
    if (c.unclustered_after_round[i - 1] > 0 &&
        c.unclustered_after_round[i] >= c.unclustered_after_round[i - 1])
      fail(r.total, "round " + std::to_string(i + 1) + " made no progress");

  // Centers of nested root bags within one round are more than eps * delta apart.
  r.worst_spacing_slack = kInf;
  auto is_ancestor = [&](int a, int b) {
    while (b >= 0 && c.bag_depth[b] > c.bag_depth[a]) b = c.bag_parent[b];
    return a == b;
  };
  for (size_t i = 0; i < c.root_bags.size(); ++i) {
    const RootBag& x = c.root_bags[i];
    std::vector<std::vector<double>> rows;
    for (int u : x.centers) rows.push_back(dijkstra(g, u).dist);
    for (size_t j = 0; j < c.root_bags.size(); ++j) {
      const RootBag& y = c.root_bags[j];
      if (i == j || y.round != x.round || x.bag == y.bag || !is_ancestor(x.bag, y.bag)) continue;
      for (size_t a = 0; a < x.centers.size(); ++a)
        for (int v : y.centers) {
          double d = rows[a][v];
          r.worst_spacing_slack = std::min(r.worst_spacing_slack, d - unit);
          if (d <= unit + tol)
            fail(r.spacing, "round " + std::to_string(x.round) + " centers " + std::to_string(x.centers[a]) +
                                " and " + std::to_string(v) + " are within eps * delta");
        }
    }
  }
  if (r.worst_spacing_slack == kInf) r.worst_spacing_slack = 0.0;

  double bound = hop_recurrence(c.width, p.eps, c.width + 1);
  std::vector<std::vector<int>> targets(g.n());
  if (g.n() <= check.exact_pairs_cap) {
    for (int u = 0; u < g.n(); ++u)
      for (int v = u + 1; v < g.n(); ++v) targets[u].push_back(v);
  } else {
    std::mt19937_64 rng(check.seed);
    std::uniform_int_distribution<int> pick(0, g.n() - 1);
    for (int i = 0; i < check.samples; ++i) {
      int u = pick(rng), v = pick(rng);
      if (u != v) targets[std::min(u, v)].push_back(std::max(u, v));
    }
    for (auto& l : targets) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  }
  std::vector<int> worst(g.n(), 0);
  std::vector<long> pairs(g.n(), 0);
  parallel_for(g.n(), check.threads, [&](int u) {
    if (targets[u].empty()) return;
    ShortestPathTree sp = dijkstra(g, u);
    for (int v : targets[u]) {
      worst[u] = std::max(worst[u], path_cost(p, cg, sp.path_to(v)));
      ++pairs[u];
    }
  });
  for (int u = 0; u < g.n(); ++u) {
    r.pairs += pairs[u];
    r.max_cost = std::max(r.max_cost, worst[u]);
    r.witness_counts[static_cast<int>(CostWitness::ShortestPath)] += pairs[u];
  }
  r.worst_hop_slack = r.max_cost - bound;
  if (r.max_cost > bound) fail(r.hops, "cluster hops " + std::to_string(r.max_cost) + " exceed the recurrence bound");
  return r;
}

}  // namespace treecover
