#include "treecover/mult_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>

#include "treecover/errors.hpp"
#include "treecover/forest_cover.hpp"
#include "treecover/oracle.hpp"

namespace treecover {

namespace {

std::vector<std::vector<int>> members_of(const std::vector<int>& level) {
  int count = level.empty() ? 0 : *std::max_element(level.begin(), level.end()) + 1;
  std::vector<std::vector<int>> out(count);
  for (int v = 0; v < static_cast<int>(level.size()); ++v) out[level[v]].push_back(v);
  return out;
}

double min_distance(const ExactOracle& oracle) {
  double best = kInf;
  for (int u = 0; u < oracle.n(); ++u)
    for (int v = u + 1; v < oracle.n(); ++v) best = std::min(best, oracle(u, v));
  return best;
}

HierarchicalPartition draw_hierarchy(const ExactOracle& oracle, double unit, double mu, int top,
                                     std::mt19937_64& rng) {
  int n = oracle.n();
  HierarchicalPartition hp;
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  hp.levels.push_back(identity);
  hp.radius.push_back(0.0);
  hp.scale.push_back(0);
  for (int i = 1; i < top; ++i) {
    double lo = unit * std::pow(mu, i) / 4, hi = unit * (std::pow(mu, i) / 2 - std::pow(mu, i - 1));
    double radius = std::uniform_real_distribution<double>(lo, hi)(rng);
    std::vector<int> order = identity;
    std::shuffle(order.begin(), order.end(), rng);
    auto children = members_of(hp.levels.back());
    std::vector<int> parent(children.size(), -1);
    std::vector<int> level(n, -1);
    int clusters = 0;
    size_t left = children.size();
    for (int c : order) {
      if (left == 0) break;
      bool used = false;
      for (size_t k = 0; k < children.size(); ++k) {
        if (parent[k] >= 0) continue;
        bool reach = false;
        for (int x : children[k])
          if (oracle(c, x) <= radius) {
            reach = true;
            break;
          }
        if (!reach) continue;
        if (!used) {
          used = true;
          ++clusters;
        }
        parent[k] = clusters - 1;
        --left;
      }
    }
    for (size_t k = 0; k < children.size(); ++k)
      for (int x : children[k]) level[x] = parent[k];
    hp.levels.push_back(std::move(level));
    hp.radius.push_back(unit * std::pow(mu, i));
    hp.scale.push_back(i);
  }
  hp.levels.push_back(std::vector<int>(n, 0));
  hp.radius.push_back(unit * std::pow(mu, top));
  hp.scale.push_back(top);
  return hp;
}

// padded[i][x] for scales 1 .. top-1 of a base hierarchy.
std::vector<std::vector<char>> padding(const HierarchicalPartition& hp, const ExactOracle& oracle,
                                       double unit, double mu, double rho) {
  int n = oracle.n();
  std::vector<std::vector<char>> out(hp.depth(), std::vector<char>(n, 1));
  for (int i = 1; i + 1 < hp.depth(); ++i) {
    double beta = unit * std::pow(mu, hp.scale[i]) / rho;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (oracle(x, y) <= beta && hp.levels[i][x] != hp.levels[i][y]) {
          out[i][x] = 0;
          break;
        }
  }
  return out;
}

int top_scale(const ExactOracle& oracle, double unit, double mu) {
  int top = 1;
  while (unit * std::pow(mu, top) < oracle.diameter()) ++top;
  return top;
}

RootedTree single_node(int v) {
  RootedTree t;
  t.kind = TreeKind::SteinerStar;
  t.root = t.add_node(v, -1, 0.0);
  return t;
}

}  // namespace

int HierarchicalPartition::cluster_count(int j) const {
  const auto& l = levels[j];
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end()) + 1;
}

PartitionFamily build_hpf(const ExactOracle& oracle, const HpfOptions& opt) {
  if (!(opt.mu >= 4)) throw InvalidArgument("mu must be at least 4");
  if (!(opt.rho > 1)) throw InvalidArgument("rho must exceed 1");
  PartitionFamily f;
  f.mu = opt.mu;
  f.rho = opt.rho;
  int n = oracle.n();
  if (n <= 1) {
    HierarchicalPartition hp;
    hp.levels.push_back(std::vector<int>(n, 0));
    hp.radius.push_back(0.0);
    hp.scale.push_back(0);
    f.unit = 1.0;
    f.hierarchies.push_back(std::move(hp));
    return f;
  }
  f.unit = min_distance(oracle);
  if (!(f.unit > 0)) throw InvalidArgument("distinct vertices at distance zero");
  int top = top_scale(oracle, f.unit, opt.mu);
  std::mt19937_64 rng(opt.seed);
  std::vector<std::vector<char>> covered(top + 1, std::vector<char>(n, 0));
  long missing = static_cast<long>(std::max(0, top - 1)) * n;
  while (missing > 0 || f.hierarchies.empty()) {
    if (f.sampled >= opt.max_hierarchies)
      throw ConstructionFailure(std::to_string(missing) + " point scales unpadded after " +
                                std::to_string(f.sampled) + " hierarchies");
    HierarchicalPartition hp = draw_hierarchy(oracle, f.unit, opt.mu, top, rng);
    ++f.sampled;
    auto pad = padding(hp, oracle, f.unit, opt.mu, opt.rho);
    long gained = 0;
    for (int i = 1; i < top; ++i)
      for (int x = 0; x < n; ++x)
        if (pad[i][x] && !covered[i][x]) {
          covered[i][x] = 1;
          ++gained;
        }
    if (gained == 0 && !f.hierarchies.empty()) continue;
    missing -= gained;
    f.hierarchies.push_back(std::move(hp));
  }
  return f;
}

void validate_hierarchy(const HierarchicalPartition& hp, const ExactOracle& oracle) {
  int n = oracle.n();
  double tol = 1e-9 * std::max(1.0, oracle.diameter());
  if (hp.depth() == 0) throw InvariantViolation("hierarchy has no levels");
  if (hp.radius.size() != hp.levels.size()) throw InvariantViolation("hierarchy radius list has the wrong size");
  for (int j = 0; j < hp.depth(); ++j)
    if (static_cast<int>(hp.levels[j].size()) != n) throw InvariantViolation("hierarchy level has the wrong size");
  if (hp.cluster_count(0) != n) throw InvariantViolation("bottom level is not singletons");
  if (n > 0 && hp.cluster_count(hp.depth() - 1) != 1) throw InvariantViolation("top level is not one cluster");
  for (int j = 1; j < hp.depth(); ++j) {
    std::vector<int> parent(hp.cluster_count(j - 1), -1);
    for (int v = 0; v < n; ++v) {
      int c = hp.levels[j - 1][v], p = hp.levels[j][v];
      if (parent[c] >= 0 && parent[c] != p)
        throw InvariantViolation("level " + std::to_string(j) + " splits a child cluster");
      parent[c] = p;
    }
    for (const auto& members : members_of(hp.levels[j]))
      for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
          if (oracle(members[a], members[b]) > hp.radius[j] + tol)
            throw InvariantViolation("level " + std::to_string(j) + " cluster exceeds its diameter bound");
  }
}

long unpadded_count(const PartitionFamily& hpf, const ExactOracle& oracle) {
  int n = oracle.n();
  if (hpf.hierarchies.empty() || n <= 1) return 0;
  int top = hpf.hierarchies[0].depth() - 1;
  std::vector<std::vector<char>> covered(top + 1, std::vector<char>(n, 0));
  for (const auto& hp : hpf.hierarchies) {
    auto pad = padding(hp, oracle, hpf.unit, hpf.mu, hpf.rho);
    for (int i = 1; i < top; ++i)
      for (int x = 0; x < n; ++x) covered[i][x] |= pad[i][x];
  }
  long missing = 0;
  for (int i = 1; i < top; ++i)
    for (int x = 0; x < n; ++x) missing += !covered[i][x];
  return missing;
}

PairCertificate certify_pair(const PartitionFamily& hppf, const ExactOracle& oracle, int x, int y) {
  PairCertificate best;
  double d = oracle(x, y);
  for (int h = 0; h < static_cast<int>(hppf.hierarchies.size()); ++h) {
    const auto& hp = hppf.hierarchies[h];
    for (int j = 1; j < hp.depth(); ++j)
      if (hp.levels[j][x] == hp.levels[j][y]) {
        double ratio = hp.radius[j] / d;
        if (best.hierarchy < 0 || ratio < best.ratio) best = {h, j, ratio};
        break;
      }
  }
  return best;
}

PartitionFamily hpf_to_hppf(const PartitionFamily& hpf, double eps, const ExactOracle& oracle) {
  if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0, 1)");
  PartitionFamily out;
  out.mu = hpf.mu;
  out.unit = hpf.unit;
  out.sampled = hpf.sampled;
  out.kappa = std::max(1, static_cast<int>(std::ceil(std::log(1.0 / eps) / std::log(hpf.mu) - 1e-12)));
  for (const auto& hp : hpf.hierarchies) {
    if (hp.depth() <= 2) {
      out.hierarchies.push_back(hp);
      continue;
    }
    for (int t = 0; t < out.kappa; ++t) {
      HierarchicalPartition sub;
      for (int j = 0; j < hp.depth(); ++j) {
        bool keep = j == 0 || j + 1 == hp.depth() || hp.scale[j] % out.kappa == t;
        if (!keep) continue;
        sub.levels.push_back(hp.levels[j]);
        sub.radius.push_back(hp.radius[j]);
        sub.scale.push_back(hp.scale[j]);
      }
      out.hierarchies.push_back(std::move(sub));
    }
  }
  int n = oracle.n();
  double worst = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      PairCertificate c = certify_pair(out, oracle, x, y);
      if (c.hierarchy < 0) throw InvariantViolation("pair without a common cluster");
      worst = std::max(worst, c.ratio);
    }
  out.rho = worst;
  if (worst > hpf.mu * hpf.rho * (1 + 1e-9))
    throw InvariantViolation("pairwise ratio " + std::to_string(worst) + " exceeds mu * rho");
  return out;
}

NetHierarchy build_nets(const HierarchicalPartition& hp) {
  NetHierarchy nets;
  int depth = hp.depth();
  int n = depth ? static_cast<int>(hp.levels[0].size()) : 0;
  nets.net_of_cluster.resize(depth);
  nets.in_net.assign(depth, std::vector<char>(n, 0));
  for (int j = depth - 1; j >= 0; --j) {
    auto members = members_of(hp.levels[j]);
    nets.net_of_cluster[j].assign(members.size(), -1);
    for (size_t c = 0; c < members.size(); ++c) {
      int pick = -1;
      if (j + 1 < depth)
        for (int v : members[c])
          if (nets.in_net[j + 1][v]) {
            if (pick >= 0) throw InvariantViolation("cluster holds two net points of the level above");
            pick = v;
          }
      if (pick < 0) pick = members[c].front();
      nets.net_of_cluster[j][c] = pick;
      nets.in_net[j][pick] = 1;
    }
  }
  return nets;
}

std::vector<int> shortest_path_closure(const Graph& g, const std::vector<int>& subset) {
  std::vector<char> in(g.n(), 0);
  std::vector<int> mark(g.n(), -1);
  for (size_t i = 0; i < subset.size(); ++i) {
    in[subset[i]] = 1;
    if (i + 1 == subset.size()) break;
    ShortestPathTree sp = dijkstra(g, subset[i]);
    mark[subset[i]] = static_cast<int>(i);
    for (size_t j = i + 1; j < subset.size(); ++j)
      for (int v = subset[j]; v >= 0 && mark[v] != static_cast<int>(i); v = sp.parent[v]) {
        mark[v] = static_cast<int>(i);
        in[v] = 1;
      }
  }
  std::vector<int> out;
  for (int v = 0; v < g.n(); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

AdditiveBuilder planar_additive_builder(const Graph& g, const Embedding& emb, double t, int threads) {
  auto faces = std::make_shared<OuterFaceOracle>(g, emb);
  const Graph* gp = &g;
  const Embedding* ep = &emb;
  return [gp, ep, faces, t, threads](const std::vector<int>& subset, double eps) {
    AdditiveCover out;
    if (subset.size() <= 1) {
      if (!subset.empty()) out.trees.push_back(single_node(subset[0]));
      return out;
    }
    Subgraph sub = induced_subgraph(*gp, shortest_path_closure(*gp, subset));
    Embedding e = induced_embedding(*faces, *ep, sub);
    double dh = diameter(sub.graph, true, threads);
    PlanarCover pc = build_planar_cover(sub.graph, e, eps, t, dh, threads);
    out.additive_bound = pc.cover.additive_bound;
    for (const auto& forest : pc.cover.forests) {
      std::vector<char> present(sub.graph.n(), 0);
      for (const RootedTree& tr : forest)
        for (int v : tr.vertex)
          if (v >= 0) present[v] = 1;
      bool complete = true;
      for (int y : subset) complete = complete && present[sub.from_parent[y]];
      RootedTree merged;
      merged.kind = TreeKind::SteinerStar;
      if (forest.size() == 1 && complete) {
        merged = forest[0];
        merged.kind = TreeKind::SteinerStar;
        for (int& v : merged.vertex)
          if (v >= 0) v = sub.to_parent[v];
        out.trees.push_back(std::move(merged));
        continue;
      }
      merged.root = merged.add_node(-1, -1, 0.0);
      for (const RootedTree& tr : forest) {
        int offset = merged.size();
        for (int i = 0; i < tr.size(); ++i) {
          int par = i == tr.root ? merged.root : tr.parent[i] + offset;
          double w = i == tr.root ? dh : tr.weight[i];
          merged.add_node(tr.vertex[i] >= 0 ? sub.to_parent[tr.vertex[i]] : -1, par, w);
        }
      }
      for (int y : subset)
        if (!present[sub.from_parent[y]]) merged.add_node(y, merged.root, dh);
      out.trees.push_back(std::move(merged));
    }
    return out;
  };
}

AdditiveBuilder exact_additive_builder(const Graph& g) {
  const Graph* gp = &g;
  return [gp](const std::vector<int>& subset, double) {
    AdditiveCover out;
    if (subset.size() <= 1) {
      if (!subset.empty()) out.trees.push_back(single_node(subset[0]));
      return out;
    }
    Subgraph sub = induced_subgraph(*gp, shortest_path_closure(*gp, subset));
    for (int y : subset) {
      ShortestPathTree sp = dijkstra(sub.graph, sub.from_parent[y]);
      RootedTree t;
      t.kind = TreeKind::SteinerStar;
      std::vector<int> node(sub.graph.n(), -1);
      for (int v : sp.order) {
        int p = sp.parent[v];
        double w = p < 0 ? 0.0 : sub.graph.edge(sub.graph.find_edge(v, p)).w;
        node[v] = t.add_node(sub.to_parent[v], p < 0 ? -1 : node[p], w);
      }
      t.root = 0;
      out.trees.push_back(std::move(t));
    }
    return out;
  };
}

MultCover multiplicative_cover(const Graph& g, double eps, const AdditiveBuilder& builder, const MultOptions& opt) {
  if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0, 1)");
  require_connected(g);
  int n = g.n();
  ExactOracle oracle(g, opt.threads);
  MultCover out;
  out.eps = eps;
  PartitionFamily hpf = build_hpf(oracle, opt.hpf);
  out.hppf = hpf_to_hppf(hpf, eps, oracle);
  out.rho = out.hppf.rho;
  double inner = opt.inner_eps > 0 ? opt.inner_eps : eps;

  for (int h = 0; h < static_cast<int>(out.hppf.hierarchies.size()); ++h) {
    const HierarchicalPartition& hp = out.hppf.hierarchies[h];
    validate_hierarchy(hp, oracle);
    NetHierarchy nets = build_nets(hp);
    int depth = hp.depth();
    // covers[j][S] for levels j >= 1 over the net points of level j - 1 inside S.
    std::vector<std::vector<AdditiveCover>> covers(depth);
    std::vector<std::vector<std::vector<int>>> subsets(depth);
    for (int j = 1; j < depth; ++j) {
      subsets[j].resize(hp.cluster_count(j));
      for (int v = 0; v < n; ++v)
        if (nets.in_net[j - 1][v]) subsets[j][hp.levels[j][v]].push_back(v);
      covers[j].resize(subsets[j].size());
      parallel_for(static_cast<int>(subsets[j].size()), opt.threads,
                   [&](int s) { covers[j][s] = builder(subsets[j][s], inner); });
      for (size_t s = 0; s < subsets[j].size(); ++s) {
        const auto& cov = covers[j][s];
        if (cov.trees.empty()) throw InvariantViolation("additive builder returned no trees");
        for (const RootedTree& tr : cov.trees) {
          validate_tree(tr, n);
          std::vector<char> seen(n, 0);
          for (int v : tr.vertex)
            if (v >= 0) seen[v] = 1;
          for (int y : subsets[j][s])
            if (!seen[y]) throw InvariantViolation("additive tree misses a point of its subset");
        }
      }
    }
    int kappa = 1;
    for (int j = 1; j < depth; ++j)
      for (const auto& cov : covers[j]) kappa = std::max(kappa, static_cast<int>(cov.trees.size()));
    out.kappa.push_back(kappa);

    std::vector<MultLevelStats> stats(depth);
    for (int j = 0; j < depth; ++j) {
      stats[j].hierarchy = h;
      stats[j].level = j;
      stats[j].radius = hp.radius[j];
      for (const auto& cov : covers[j]) stats[j].additive = std::max(stats[j].additive, cov.additive_bound);
    }
    int top = nets.net_of_cluster[depth - 1][0];
    std::vector<RootedTree> glued(kappa);
    parallel_for(kappa, opt.threads, [&](int t) {
      struct Link {
        int a, b;
        double w;
      };
      std::vector<Link> links;
      int labels = n;
      std::vector<char> point(n, 0);
      for (int j = 1; j < depth; ++j)
        for (size_t s = 0; s < covers[j].size(); ++s) {
          const auto& trees = covers[j][s].trees;
          const RootedTree& tr = trees[t % trees.size()];
          for (int v : subsets[j][s]) point[v] = 1;
          std::vector<int> label(tr.size());
          for (int i = 0; i < tr.size(); ++i) {
            int v = tr.vertex[i];
            label[i] = (v >= 0 && point[v]) ? v : labels++;
          }
          for (int v : subsets[j][s]) point[v] = 0;
          for (int i = 0; i < tr.size(); ++i)
            if (tr.parent[i] >= 0) links.push_back({label[i], label[tr.parent[i]], tr.weight[i]});
        }
      if (static_cast<int>(links.size()) != labels - 1)
        throw InvariantViolation("glued structure has " + std::to_string(links.size()) + " edges on " +
                                 std::to_string(labels) + " nodes");
      std::vector<std::vector<std::pair<int, double>>> adj(labels);
      for (const Link& l : links) {
        adj[l.a].push_back({l.b, l.w});
        adj[l.b].push_back({l.a, l.w});
      }
      RootedTree tree;
      tree.kind = TreeKind::SteinerStar;
      std::vector<int> node(labels, -1);
      node[top] = tree.add_node(top, -1, 0.0);
      tree.root = node[top];
      std::vector<int> queue{top};
      for (size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        for (auto [y, w] : adj[x])
          if (node[y] < 0) {
            node[y] = tree.add_node(y < n ? y : -1, node[x], w);
            queue.push_back(y);
          }
      }
      if (tree.size() != labels) throw InvariantViolation("glued structure is disconnected");
      glued[t] = std::move(tree);
    });

    for (int t = 0; t < kappa; ++t) {
      const RootedTree& tree = glued[t];
      LcaIndex lca(tree);
      std::vector<int> node(n, -1);
      for (int i = 0; i < tree.size(); ++i)
        if (tree.vertex[i] >= 0) node[tree.vertex[i]] = i;
      for (int x = 0; x < n; ++x)
        for (int j = 1; j < depth; ++j) {
          double d = lca.distance(node[x], node[nets.ancestor(hp, x, j)]);
          stats[j].ancestor = std::max(stats[j].ancestor, d);
        }
      out.cover.forests.push_back({tree});
    }
    for (int j = 1; j < depth; ++j) {
      const MultLevelStats& lo = stats[j - 1];
      const MultLevelStats& hi = stats[j];
      double term = (2 * lo.radius + hi.additive + 2 * lo.ancestor) / (eps * hi.radius);
      out.c = std::max(out.c, out.rho * term);
      out.c0 = std::max(out.c0, hi.ancestor / hi.radius);
      out.a = std::max(out.a, hi.additive / hi.radius);
    }
    out.levels.push_back(std::move(stats));
    out.nets.push_back(std::move(nets));
  }
  out.cover.eps = eps;
  out.cover.delta = oracle.diameter();
  return out;
}

}  // namespace treecover
