#include "treecover/shortcut_partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

#include "treecover/errors.hpp"

namespace treecover {

namespace {

std::vector<int> loop_erase(const std::vector<int>& walk) {
  std::vector<int> out;
  std::unordered_map<int, size_t> at;
  for (int v : walk) {
    auto it = at.find(v);
    if (it != at.end()) {
      for (size_t i = it->second + 1; i < out.size(); ++i) at.erase(out[i]);
      out.resize(it->second + 1);
      continue;
    }
    at[v] = out.size();
    out.push_back(v);
  }
  return out;
}

}  // namespace

bool ClusterGraph::adjacent(int a, int b) const {
  return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

ClusterGraph build_cluster_graph(const Graph& g, const std::vector<int>& cluster_of, int count) {
  ClusterGraph cg;
  cg.adj.resize(count);
  for (const Edge& e : g.edges()) {
    int a = cluster_of[e.u], b = cluster_of[e.v];
    if (a == b) continue;
    cg.adj[a].push_back(b);
    cg.adj[b].push_back(a);
  }
  for (auto& l : cg.adj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return cg;
}

void rebuild_cluster_vertices(Partition& p) {
  for (auto& c : p.clusters) c.vertices.clear();
  for (int v = 0; v < static_cast<int>(p.cluster_of.size()); ++v) {
    int c = p.cluster_of[v];
    if (c < 0 || c >= p.size()) throw InvalidArgument("cluster id out of range");
    p.clusters[c].vertices.push_back(v);
  }
}

int hop_diameter(const ClusterGraph& cg) {
  int best = 0;
  std::vector<int> d(cg.size());
  for (int s = 0; s < cg.size(); ++s) {
    std::fill(d.begin(), d.end(), -1);
    std::vector<int> queue{s};
    d[s] = 0;
    for (size_t i = 0; i < queue.size(); ++i)
      for (int y : cg.adj[queue[i]])
        if (d[y] < 0) {
          d[y] = d[queue[i]] + 1;
          best = std::max(best, d[y]);
          queue.push_back(y);
        }
  }
  return best;
}

std::vector<Cluster> cluster_column(const Graph& g, const Column& col, double eps, double delta) {
  const auto& spine = col.spine;
  if (spine.empty()) throw InvalidArgument("column has no spine");
  double tol = 1e-9 * std::max(1.0, delta);
  double step = eps * delta;
  std::vector<double> pos(spine.size(), 0.0);
  for (size_t i = 1; i < spine.size(); ++i) {
    int e = g.find_edge(spine[i - 1], spine[i]);
    if (e < 0) throw InvalidArgument("spine is not a path");
    pos[i] = pos[i - 1] + g.edge(e).w;
  }
  std::vector<size_t> centers{0};
  for (size_t j = 1; j < spine.size(); ++j)
    if (pos[j] - pos[centers.back()] >= step - tol) centers.push_back(j);
  std::vector<Cluster> out(centers.size());
  for (size_t k = 0; k < centers.size(); ++k) {
    out[k].center = spine[centers[k]];
    out[k].ordinal = static_cast<int>(k);
  }
  std::vector<int> spine_cluster(spine.size());
  for (size_t i = 0; i < spine.size(); ++i) {
    size_t best = 0;
    for (size_t k = 1; k < centers.size(); ++k)
      if (std::abs(pos[i] - pos[centers[k]]) < std::abs(pos[i] - pos[centers[best]])) best = k;
    spine_cluster[i] = static_cast<int>(best);
  }
  std::vector<char> mask = make_mask(g.n(), col.vertices);
  std::vector<MultiSource> src;
  for (size_t i = 0; i < spine.size(); ++i) src.push_back({spine[i], 0.0, static_cast<int>(i)});
  LabelledForest f = labelled_dijkstra(g, src, &mask);
  for (int v : col.vertices) {
    if (f.label[v] < 0) throw InvariantViolation("column vertex " + std::to_string(v) + " cannot reach its spine");
    out[spine_cluster[f.label[v]]].vertices.push_back(v);
  }
  for (auto& c : out) std::sort(c.vertices.begin(), c.vertices.end());
  return out;
}

Partition cluster_hierarchy(const Graph& g, const GridtreeHierarchy& h, double eps, double t,
                            double delta) {
  if (!(eps > 0)) throw InvalidArgument("eps must be positive");
  if (!(t > 0 && t <= 0.125 + 1e-12)) throw InvalidArgument("t must lie in (0, 1/8]");
  double w = t * eps * delta;
  if (std::abs(h.width - w) > 1e-9 * std::max(1.0, w))
    throw InvalidArgument("hierarchy width does not match t * eps * delta");
  Partition p;
  p.eps = eps;
  p.t = t;
  p.delta = delta;
  p.cluster_of.assign(g.n(), -1);
  for (size_t node = 0; node < h.nodes.size(); ++node) {
    const Gridtree& tree = h.nodes[node].tree;
    for (size_t c = 0; c < tree.columns.size(); ++c) {
      for (Cluster& cl : cluster_column(g, tree.columns[c], eps, delta)) {
        cl.node = static_cast<int>(node);
        cl.column = static_cast<int>(c);
        int id = p.size();
        for (int v : cl.vertices) {
          if (p.cluster_of[v] >= 0)
            throw InvariantViolation("vertex " + std::to_string(v) + " lies in two columns");
          p.cluster_of[v] = id;
        }
        p.clusters.push_back(std::move(cl));
      }
    }
  }
  for (int v = 0; v < g.n(); ++v)
    if (p.cluster_of[v] < 0) throw InvariantViolation("vertex " + std::to_string(v) + " lies in no column");
  return p;
}

PlanarPartition build_planar_partition(const Graph& g, const Embedding& emb, double eps, double t,
                                       double delta) {
  PlanarPartition out;
  out.hierarchy = build_hierarchy(g, emb, t * eps * delta);
  out.partition = cluster_hierarchy(g, out.hierarchy, eps, t, delta);
  return out;
}

int path_cost(const Partition& p, const ClusterGraph& cg, const std::vector<int>& path) {
  if (path.empty()) throw InvalidArgument("empty path");
  std::vector<int> allowed;
  for (int v : path) {
    if (v < 0 || v >= static_cast<int>(p.cluster_of.size()) || p.cluster_of[v] < 0)
      throw InvalidArgument("path vertex in no cluster");
    allowed.push_back(p.cluster_of[v]);
  }
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  int s = p.cluster_of[path.front()], target = p.cluster_of[path.back()];
  if (s == target) return 0;
  auto index = [&](int c) {
    auto it = std::lower_bound(allowed.begin(), allowed.end(), c);
    return (it != allowed.end() && *it == c) ? static_cast<int>(it - allowed.begin()) : -1;
  };
  std::vector<int> d(allowed.size(), -1);
  std::vector<int> queue{s};
  d[index(s)] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    int dx = d[index(x)];
    for (int y : cg.adj[x]) {
      int iy = index(y);
      if (iy < 0 || d[iy] >= 0) continue;
      d[iy] = dx + 1;
      if (y == target) return d[iy];
      queue.push_back(y);
    }
  }
  throw InvariantViolation("path endpoints are not joined through the clusters it touches");
}

CostEvaluator::CostEvaluator(const Graph& g, const GridtreeHierarchy& h, const Partition& p)
    : g_(&g), h_(&h), p_(&p) {
  cg_ = build_cluster_graph(g, p.cluster_of, p.size());
  node_of_.assign(g.n(), -1);
  column_of_.assign(g.n(), -1);
  attach_.assign(g.n(), -1);
  spine_index_.assign(g.n(), -1);
  for (size_t node = 0; node < h.nodes.size(); ++node) {
    column_base_.push_back(static_cast<int>(arc_.size()));
    const Gridtree& tree = h.nodes[node].tree;
    for (size_t c = 0; c < tree.columns.size(); ++c) {
      const Column& col = tree.columns[c];
      for (int v : col.vertices) {
        node_of_[v] = static_cast<int>(node);
        column_of_[v] = static_cast<int>(c);
      }
      std::vector<double> pos(col.spine.size(), 0.0);
      std::vector<MultiSource> src;
      for (size_t i = 0; i < col.spine.size(); ++i) {
        if (i > 0) pos[i] = pos[i - 1] + g.edge(g.find_edge(col.spine[i - 1], col.spine[i])).w;
        spine_index_[col.spine[i]] = static_cast<int>(i);
        src.push_back({col.spine[i], 0.0, static_cast<int>(i)});
      }
      arc_.push_back(std::move(pos));
      std::vector<char> mask = make_mask(g.n(), col.vertices);
      LabelledForest f = labelled_dijkstra(g, src, &mask);
      for (int v : col.vertices)
        if (spine_index_[v] < 0) attach_[v] = f.parent[v];
    }
  }
}

double CostEvaluator::path_length(const std::vector<int>& path) const {
  double len = 0.0;
  for (size_t i = 1; i < path.size(); ++i) {
    int e = g_->find_edge(path[i - 1], path[i]);
    if (e < 0) throw InvariantViolation("candidate path uses a missing edge");
    len += g_->edge(e).w;
  }
  return len;
}

std::vector<int> CostEvaluator::attach_chain(int v) const {
  std::vector<int> chain{v};
  while (attach_[chain.back()] >= 0) chain.push_back(attach_[chain.back()]);
  return chain;
}

std::vector<int> CostEvaluator::spine_detour(int u, int v) const {
  if (node_of_[u] != node_of_[v] || column_of_[u] != column_of_[v])
    throw InvalidArgument("spine detour needs both endpoints in one column");
  const Column& col = h_->nodes[node_of_[u]].tree.columns[column_of_[u]];
  std::vector<int> head = attach_chain(u), tail = attach_chain(v);
  int a = spine_index_[head.back()], b = spine_index_[tail.back()];
  std::vector<int> walk = head;
  if (a < b)
    for (int i = a + 1; i <= b; ++i) walk.push_back(col.spine[i]);
  else
    for (int i = a - 1; i >= b; --i) walk.push_back(col.spine[i]);
  for (size_t i = tail.size() - 1; i-- > 0;) walk.push_back(tail[i]);
  return loop_erase(walk);
}

std::vector<int> CostEvaluator::improve(const std::vector<int>& path, size_t lo, size_t hi, int node,
                                        double slack_factor) const {
  std::vector<int> out;
  double tol = 1e-9 * std::max(1.0, p_->delta);
  size_t i = lo;
  while (i <= hi) {
    int x = path[i];
    if (node_of_[x] == node) {
      int c = column_of_[x];
      size_t e = i;
      for (size_t j = i; j <= hi; ++j)
        if (node_of_[path[j]] == node && column_of_[path[j]] == c) e = j;
      std::vector<int> piece(path.begin() + i, path.begin() + e + 1);
      int cs = p_->cluster_of[path[i]], ce = p_->cluster_of[path[e]];
      if (cs != ce && !cg_.adjacent(cs, ce)) {
        std::vector<int> detour = spine_detour(path[i], path[e]);
        if (path_length(detour) <= (1 + slack_factor) * path_length(piece) + tol) piece = std::move(detour);
      }
      out.insert(out.end(), piece.begin(), piece.end());
      i = e + 1;
    } else {
      size_t j = i;
      while (j + 1 <= hi && node_of_[path[j + 1]] != node) ++j;
      int child = node_of_[x];
      while (child >= 0 && h_->nodes[child].parent != node) child = h_->nodes[child].parent;
      if (child < 0) {
        out.insert(out.end(), path.begin() + i, path.begin() + j + 1);
      } else {
        std::vector<int> sub = improve(path, i, j, child, slack_factor);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      i = j + 1;
    }
  }
  return out;
}

std::vector<int> CostEvaluator::chopped_path(const std::vector<int>& path, double slack_factor) const {
  if (path.empty()) return {};
  return loop_erase(improve(path, 0, path.size() - 1, 0, slack_factor));
}

CostCertificate CostEvaluator::evaluate(int u, int v, const ShortestPathTree& from_u, double slack_factor,
                                        double target) const {
  CostCertificate best;
  if (u == v) {
    best.cost = 0;
    best.witness = CostWitness::ShortestPath;
    best.path = {u};
    return best;
  }
  double dist = from_u.dist[v];
  double budget = (1 + slack_factor) * dist + 1e-9 * std::max(1.0, p_->delta);
  auto consider = [&](std::vector<int> path, CostWitness w) {
    if (path.empty() || path.front() != u || path.back() != v) return;
    double len = path_length(path);
    if (len > budget) return;
    int c = path_cost(*p_, cg_, path);
    if (best.cost < 0 || c < best.cost) {
      best.cost = c;
      best.witness = w;
      best.path = std::move(path);
      best.length = len;
    }
  };
  std::vector<int> sp = from_u.path_to(v);
  consider(sp, CostWitness::ShortestPath);
  if (best.cost >= 0 && best.cost <= target) return best;
  if (node_of_[u] == node_of_[v] && column_of_[u] == column_of_[v])
    consider(spine_detour(u, v), CostWitness::SpineDetour);
  if (best.cost >= 0 && best.cost <= target) return best;
  consider(chopped_path(sp, slack_factor), CostWitness::Chopped);
  return best;
}

PartitionReport verify_clusters(const Graph& g, const Partition& p, double diameter_bound, int threads) {
  PartitionReport r;
  r.clusters = p.size();
  double tol = 1e-9 * std::max(1.0, p.delta);
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    r.ok = false;
    if (r.failures.size() < 20) r.failures.push_back(msg);
  };
  if (static_cast<int>(p.cluster_of.size()) != g.n()) {
    fail(r.total, "cluster map has the wrong size");
    return r;
  }
  std::vector<int> count(p.size(), 0);
  for (int v = 0; v < g.n(); ++v) {
    int c = p.cluster_of[v];
    if (c < 0 || c >= p.size()) {
      fail(r.total, "vertex " + std::to_string(v) + " has no cluster");
      return r;
    }
    ++count[c];
  }
  for (int c = 0; c < p.size(); ++c) {
    const auto& vs = p.clusters[c].vertices;
    bool consistent = static_cast<int>(vs.size()) == count[c];
    for (int v : vs) consistent = consistent && p.cluster_of[v] == c;
    if (!consistent) fail(r.total, "cluster " + std::to_string(c) + " vertex list disagrees with the map");
    if (vs.empty()) fail(r.total, "cluster " + std::to_string(c) + " is empty");
  }
  if (!r.total) return r;
  std::vector<double> diam(p.size(), 0.0);
  std::vector<char> split(p.size(), 0);
  parallel_for(p.size(), threads, [&](int c) {
    const auto& vs = p.clusters[c].vertices;
    std::vector<char> mask = make_mask(g.n(), vs);
    for (int s : vs) {
      ShortestPathTree sp = dijkstra(g, s, &mask);
      for (int v : vs) {
        if (!sp.reached(v)) {
          split[c] = 1;
          return;
        }
        diam[c] = std::max(diam[c], sp.dist[v]);
      }
    }
  });
  for (int c = 0; c < p.size(); ++c) {
    if (split[c]) fail(r.connected, "cluster " + std::to_string(c) + " is not connected");
    r.max_cluster_diameter = std::max(r.max_cluster_diameter, diam[c]);
    if (diam[c] > diameter_bound + tol)
      fail(r.diameter, "cluster " + std::to_string(c) + " has strong diameter " + std::to_string(diam[c]));
  }
  return r;
}

PartitionReport verify_partition(const Graph& g, const GridtreeHierarchy& h, const Partition& p,
                                 const PartitionCheck& check) {
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

  if (check.check_spacing) {
    std::map<std::pair<int, int>, std::vector<int>> by_column;
    for (int c = 0; c < p.size(); ++c)
      if (p.clusters[c].node >= 0) by_column[{p.clusters[c].node, p.clusters[c].column}].push_back(c);
    r.worst_spacing_slack = kInf;
    for (auto& [key, ids] : by_column) {
      std::sort(ids.begin(), ids.end(),
                [&](int a, int b) { return p.clusters[a].ordinal < p.clusters[b].ordinal; });
      if (key.first >= static_cast<int>(h.nodes.size())) {
        fail(r.spacing, "cluster refers to a missing hierarchy node");
        continue;
      }
      const Gridtree& tree = h.nodes[key.first].tree;
      std::vector<char> mask = make_mask(g.n(), tree.subtree_vertices(key.second));
      for (size_t i = 0; i < ids.size(); ++i) {
        ShortestPathTree sp = dijkstra(g, p.clusters[ids[i]].center, &mask);
        for (size_t j = i + 1; j < ids.size(); ++j) {
          double need = static_cast<double>(j - i) * unit;
          double got = sp.dist[p.clusters[ids[j]].center];
          r.worst_spacing_slack = std::min(r.worst_spacing_slack, got - need);
          if (got < need - tol)
            fail(r.spacing, "centers " + std::to_string(p.clusters[ids[i]].center) + " and " +
                                std::to_string(p.clusters[ids[j]].center) + " are " + std::to_string(got) +
                                " apart, need " + std::to_string(need));
        }
      }
    }
    if (r.worst_spacing_slack == kInf) r.worst_spacing_slack = 0.0;
  }

  if (check.check_hops) {
    double slack = check.slack_factor < 0 ? 8 * p.t : check.slack_factor;
    double scale = p.t * unit;
    CostEvaluator eval(g, h, p);
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
    struct Row {
      int max_cost = 0;
      double worst = -kInf;
      long pairs = 0;
      long witness[4] = {0, 0, 0, 0};
      std::string failure;
    };
    std::vector<Row> rows(g.n());
    parallel_for(g.n(), check.threads, [&](int u) {
      if (targets[u].empty()) return;
      Row& row = rows[u];
      ShortestPathTree sp = dijkstra(g, u);
      for (int v : targets[u]) {
        double bound = check.hop_slope * sp.dist[v] / scale + check.hop_offset;
        CostCertificate cert = eval.evaluate(u, v, sp, slack, bound);
        ++row.pairs;
        ++row.witness[static_cast<int>(cert.witness)];
        if (cert.cost < 0) {
          if (row.failure.empty())
            row.failure = "no candidate path for " + std::to_string(u) + "-" + std::to_string(v);
          continue;
        }
        row.max_cost = std::max(row.max_cost, cert.cost);
        row.worst = std::max(row.worst, cert.cost - bound);
        if (cert.cost > bound + 1e-9 && row.failure.empty())
          row.failure = "pair " + std::to_string(u) + "-" + std::to_string(v) + " has cost " +
                        std::to_string(cert.cost) + " above " + std::to_string(bound);
      }
    });
    r.worst_hop_slack = -kInf;
    for (const Row& row : rows) {
      r.pairs += row.pairs;
      r.max_cost = std::max(r.max_cost, row.max_cost);
      r.worst_hop_slack = std::max(r.worst_hop_slack, row.worst);
      for (int k = 0; k < 4; ++k) r.witness_counts[k] += row.witness[k];
      if (!row.failure.empty()) fail(r.hops, row.failure);
    }
    if (r.pairs == 0) r.worst_hop_slack = 0.0;
  }
  return r;
}

}  // namespace treecover
