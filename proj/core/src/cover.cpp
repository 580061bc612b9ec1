#include "treecover/cover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "treecover/errors.hpp"
#include "treecover/oracle.hpp"

namespace treecover {

std::vector<int> RootedTree::vertices() const {
  std::vector<int> vs;
  for (int v : vertex)
    if (v >= 0) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  return vs;
}

int ForestCover::tree_count() const {
  int c = 0;
  for (const auto& f : forests) c += static_cast<int>(f.size());
  return c;
}

void validate_tree(const RootedTree& t, int vertex_count) {
  int s = t.size();
  if (s == 0) throw InvariantViolation("empty tree");
  if (static_cast<int>(t.parent.size()) != s || static_cast<int>(t.weight.size()) != s)
    throw InvariantViolation("tree arrays have mismatched sizes");
  if (t.root < 0 || t.root >= s || t.parent[t.root] != -1)
    throw InvariantViolation("tree root is invalid");
  std::vector<std::vector<int>> children(s);
  for (int i = 0; i < s; ++i) {
    if (i == t.root) continue;
    if (t.parent[i] < 0 || t.parent[i] >= s) throw InvariantViolation("tree node without parent");
    if (!(t.weight[i] >= 0) || !std::isfinite(t.weight[i]))
      throw InvariantViolation("tree edge weight invalid");
    children[t.parent[i]].push_back(i);
  }
  std::vector<int> stack{t.root};
  int seen = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    ++seen;
    for (int c : children[x]) stack.push_back(c);
  }
  if (seen != s) throw InvariantViolation("tree parent pointers contain a cycle");
  std::vector<char> used(vertex_count, 0);
  for (int v : t.vertex) {
    if (v < -1 || v >= vertex_count) throw InvariantViolation("tree vertex out of range");
    if (v < 0) continue;
    if (used[v]) throw InvariantViolation("vertex " + std::to_string(v) + " repeated in a tree");
    used[v] = 1;
  }
}

ForestCover forests_to_trees(const ForestCover& fc, double delta) {
  ForestCover out;
  out.eps = fc.eps;
  out.delta = fc.delta;
  out.additive_bound = fc.additive_bound;
  out.empty_forests = fc.empty_forests;
  for (const auto& forest : fc.forests) {
    if (forest.empty()) continue;
    if (forest.size() == 1) {
      out.forests.push_back({forest[0]});
      continue;
    }
    RootedTree merged;
    merged.kind = TreeKind::SteinerStar;
    merged.root = merged.add_node(-1, -1, 0.0);
    for (const RootedTree& t : forest) {
      int offset = merged.size();
      for (int i = 0; i < t.size(); ++i) {
        int par = i == t.root ? merged.root : t.parent[i] + offset;
        double w = i == t.root ? delta : t.weight[i];
        merged.add_node(t.vertex[i], par, w);
      }
    }
    out.forests.push_back({std::move(merged)});
  }
  return out;
}

namespace {

double tree_diameter(const RootedTree& t) {
  int s = t.size();
  std::vector<std::vector<std::pair<int, double>>> adj(s);
  for (int i = 0; i < s; ++i)
    if (t.parent[i] >= 0) {
      adj[i].push_back({t.parent[i], t.weight[i]});
      adj[t.parent[i]].push_back({i, t.weight[i]});
    }
  auto far = [&](int src, double* best) {
    std::vector<double> d(s, -1);
    std::vector<int> stack{src};
    d[src] = 0;
    int arg = src;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (d[x] > d[arg]) arg = x;
      for (auto [y, w] : adj[x])
        if (d[y] < 0) {
          d[y] = d[x] + w;
          stack.push_back(y);
        }
    }
    *best = d[arg];
    return arg;
  };
  double d1, d2;
  int a = far(t.root, &d1);
  far(a, &d2);
  return d2;
}

}  // namespace

CoverReport verify_cover(const ForestCover& fc, const Graph& g, const ExactOracle& oracle,
                         const CoverCheck& check) {
  CoverReport r;
  int n = g.n();
  double delta = oracle.diameter();
  double tol = check.tolerance * std::max(delta, 1.0);
  auto fail = [&](const std::string& msg) {
    r.ok = false;
    if (r.first_failure.empty()) r.first_failure = msg;
  };
  std::vector<const RootedTree*> trees;
  std::vector<int> forest_of;
  r.forests = static_cast<int>(fc.forests.size());
  r.argmin_histogram.assign(fc.forests.size(), 0);
  for (size_t f = 0; f < fc.forests.size(); ++f) {
    std::vector<char> used(n, 0);
    for (const RootedTree& t : fc.forests[f]) {
      validate_tree(t, n);
      trees.push_back(&t);
      forest_of.push_back(static_cast<int>(f));
      for (int v : t.vertex) {
        if (v < 0) continue;
        if (used[v] && check.check_disjoint) {
          r.disjoint = false;
          fail("forest " + std::to_string(f) + " has two trees sharing vertex " + std::to_string(v));
        }
        used[v] = 1;
      }
      if (t.kind == TreeKind::Spanning) {
        for (int i = 0; i < t.size(); ++i) {
          if (t.parent[i] < 0) continue;
          int a = t.vertex[i], b = t.vertex[t.parent[i]];
          int e = (a >= 0 && b >= 0) ? g.find_edge(a, b) : -1;
          if (e < 0 || g.edge(e).w != t.weight[i]) {
            r.spanning = false;
            fail("spanning tree uses a non-graph edge at vertex " + std::to_string(a));
          }
        }
      }
      double diam = tree_diameter(t);
      r.max_tree_diameter = std::max(r.max_tree_diameter, diam);
      if (diam > check.diameter_bound + tol) {
        r.diameters = false;
        fail("tree diameter " + std::to_string(diam) + " exceeds bound");
      }
    }
  }
  r.trees = static_cast<int>(trees.size());
  std::vector<LcaIndex> lca(trees.size());
  parallel_for(static_cast<int>(trees.size()), check.threads,
               [&](int i) { lca[i] = LcaIndex(*trees[i]); });
  std::vector<std::vector<std::pair<int, int>>> member(n);
  for (size_t i = 0; i < trees.size(); ++i)
    for (int x = 0; x < trees[i]->size(); ++x)
      if (trees[i]->vertex[x] >= 0) member[trees[i]->vertex[x]].push_back({static_cast<int>(i), x});

  struct RowResult {
    double slack = 0, ratio = 1, root_slack = 0;
    bool dominating = true, covered = true, additive = true, mult = true, root = true;
    std::vector<long> hist;
    std::string failure;
  };
  std::vector<RowResult> rows(n);
  parallel_for(n, check.threads, [&](int u) {
    RowResult& row = rows[u];
    row.hist.assign(fc.forests.size(), 0);
    std::vector<double> best(n, kInf), best_root(n, kInf), root_sum(n, kInf);
    std::vector<int> arg(n, -1);
    for (auto [ti, a] : member[u]) {
      const RootedTree& t = *trees[ti];
      const LcaIndex& L = lca[ti];
      double ua = L.depth(a);
      for (int b = 0; b < t.size(); ++b) {
        int v = t.vertex[b];
        if (v <= u) continue;
        double d = L.distance(a, b);
        double rs = ua + L.depth(b);
        if (d < best[v] || (d == best[v] && rs < best_root[v])) {
          best[v] = d;
          arg[v] = ti;
          best_root[v] = rs;
        }
        root_sum[v] = std::min(root_sum[v], rs);
      }
    }
    const double* exact = oracle.row(u);
    for (int v = u + 1; v < n; ++v) {
      double dv = exact[v];
      auto note = [&](const std::string& what) {
        if (row.failure.empty())
          row.failure = what + " at pair (" + std::to_string(u) + "," + std::to_string(v) + ")";
      };
      if (arg[v] < 0) {
        row.covered = false;
        note("no common tree");
        continue;
      }
      ++row.hist[forest_of[arg[v]]];
      double slack = best[v] - dv;
      row.slack = std::max(row.slack, slack);
      if (dv > 0) row.ratio = std::max(row.ratio, best[v] / dv);
      if (best[v] < dv - tol) {
        row.dominating = false;
        note("tree distance below graph distance");
      }
      if (slack > check.additive_bound + tol) {
        row.additive = false;
        note("additive slack " + std::to_string(slack));
      }
      if (best[v] > check.multiplicative_bound * dv + tol) {
        row.mult = false;
        note("multiplicative ratio " + std::to_string(best[v] / dv));
      }
      if (check.check_root_path) {
        double rs = root_sum[v] - dv;
        row.root_slack = std::max(row.root_slack, rs);
        if (rs > check.additive_bound + tol) {
          row.root = false;
          note("root path slack " + std::to_string(rs));
        }
      }
    }
  });
  for (int u = 0; u < n; ++u) {
    const RowResult& row = rows[u];
    r.pairs += n - 1 - u;
    r.worst_slack = std::max(r.worst_slack, row.slack);
    r.worst_ratio = std::max(r.worst_ratio, row.ratio);
    r.worst_root_slack = std::max(r.worst_root_slack, row.root_slack);
    for (size_t f = 0; f < row.hist.size(); ++f) r.argmin_histogram[f] += row.hist[f];
    r.dominating &= row.dominating;
    r.covered &= row.covered;
    r.within_additive &= row.additive;
    r.within_multiplicative &= row.mult;
    r.root_paths &= row.root;
    if (!row.failure.empty()) fail(row.failure);
  }
  return r;
}

std::string tree_kind_name(TreeKind k) {
  return k == TreeKind::Spanning ? "spanning" : "steiner-star";
}

TreeKind parse_tree_kind(const std::string& s) {
  if (s == "spanning") return TreeKind::Spanning;
  if (s == "steiner-star") return TreeKind::SteinerStar;
  throw InvalidArgument("unknown tree kind: " + s);
}

}  // namespace treecover
