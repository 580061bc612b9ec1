#include "treecover/forest_cover.hpp"

#include <algorithm>
#include <cmath>

#include "treecover/errors.hpp"

namespace treecover {

CoverGrouping cover_grouping(double eps, double t, double delta) {
  if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0, 1)");
  if (!(t > 0 && t <= 0.125 + 1e-12)) throw InvalidArgument("t must lie in (0, 1/8]");
  CoverGrouping c;
  c.index_modulus = static_cast<int>(std::ceil((3 * kGamma + 2) / eps - 1e-9));
  c.level_modulus = static_cast<int>(std::ceil((kGamma + 2) / (t * eps) - 1e-9));
  c.ball_radius = (kGamma + 1) * delta;
  return c;
}

std::vector<std::vector<RootedTree>> cover_gridtree(const Graph& g, const GridtreeHierarchy& h, int node,
                                                    const Partition& p, const CoverGrouping& grouping,
                                                    int threads) {
  const Gridtree& tree = h.nodes.at(node).tree;
  int k = static_cast<int>(tree.columns.size());
  std::vector<std::vector<int>> centers(k);
  for (int c = 0; c < p.size(); ++c) {
    const Cluster& cl = p.clusters[c];
    if (cl.node != node) continue;
    if (cl.column < 0 || cl.column >= k) throw InvalidArgument("partition does not match the hierarchy");
    auto& list = centers[cl.column];
    if (static_cast<int>(list.size()) <= cl.ordinal) list.resize(cl.ordinal + 1, -1);
    list[cl.ordinal] = cl.center;
  }
  std::vector<std::vector<RootedTree>> per_column(k);
  parallel_for(k, threads, [&](int c) {
    std::vector<char> mask = make_mask(g.n(), tree.subtree_vertices(c));
    for (int center : centers[c]) {
      if (center < 0) throw InvalidArgument("column is missing a cluster center");
      ShortestPathTree sp = dijkstra(g, center, &mask, grouping.ball_radius);
      RootedTree t;
      std::vector<int> local(g.n(), -1);
      for (int v : sp.order) {
        int par = sp.parent[v] < 0 ? -1 : local[sp.parent[v]];
        double w = par < 0 ? 0.0 : g.edge(g.find_edge(v, sp.parent[v])).w;
        local[v] = t.add_node(v, par, w);
      }
      t.root = 0;
      per_column[c].push_back(std::move(t));
    }
  });
  std::vector<std::vector<RootedTree>> slots(grouping.slots());
  for (int c = 0; c < k; ++c) {
    int level = tree.columns[c].level % grouping.level_modulus;
    for (size_t i = 0; i < per_column[c].size(); ++i) {
      int slot = level * grouping.index_modulus + static_cast<int>(i) % grouping.index_modulus;
      slots[slot].push_back(std::move(per_column[c][i]));
    }
  }
  return slots;
}

ForestCover cover_hierarchy(const Graph& g, const GridtreeHierarchy& h, const Partition& p, int threads) {
  CoverGrouping grouping = cover_grouping(p.eps, p.t, p.delta);
  int layers = h.depth();
  std::vector<std::vector<std::vector<RootedTree>>> merged(
      layers, std::vector<std::vector<RootedTree>>(grouping.slots()));
  for (int node = 0; node < static_cast<int>(h.nodes.size()); ++node) {
    auto slots = cover_gridtree(g, h, node, p, grouping, threads);
    auto& target = merged[h.nodes[node].layer];
    for (int s = 0; s < grouping.slots(); ++s)
      for (auto& t : slots[s]) target[s].push_back(std::move(t));
  }
  ForestCover fc;
  fc.eps = p.eps;
  fc.delta = p.delta;
  fc.additive_bound = 2 * kGamma * p.eps * p.delta;
  for (auto& layer : merged)
    for (auto& forest : layer) {
      if (forest.empty()) {
        ++fc.empty_forests;
        continue;
      }
      fc.forests.push_back(std::move(forest));
    }
  return fc;
}

PlanarCover build_planar_cover(const Graph& g, const Embedding& emb, double eps, double t, double delta,
                               int threads) {
  PlanarCover out;
  out.partition = build_planar_partition(g, emb, eps, t, delta);
  out.cover = cover_hierarchy(g, out.partition.hierarchy, out.partition.partition, threads);
  out.slots = out.partition.hierarchy.depth() * cover_grouping(eps, t, delta).slots();
  return out;
}

}  // namespace treecover
