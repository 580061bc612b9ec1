#include "treecover/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "treecover/errors.hpp"

namespace treecover {

LcaIndex::LcaIndex(const RootedTree& tree) {
  int s = tree.size();
  std::vector<std::vector<int>> children(s);
  for (int i = 0; i < s; ++i)
    if (tree.parent[i] >= 0) children[tree.parent[i]].push_back(i);
  wdepth_.assign(s, 0.0);
  level_.assign(s, 0);
  first_.assign(s, -1);
  euler_.reserve(2 * s);
  // Iterative DFS; each stack entry is (node, next child position).
  std::vector<std::pair<int, size_t>> stack{{tree.root, 0}};
  first_[tree.root] = 0;
  euler_.push_back(tree.root);
  while (!stack.empty()) {
    auto& [x, pos] = stack.back();
    if (pos < children[x].size()) {
      int c = children[x][pos++];
      wdepth_[c] = wdepth_[x] + tree.weight[c];
      level_[c] = level_[x] + 1;
      first_[c] = static_cast<int>(euler_.size());
      euler_.push_back(c);
      stack.push_back({c, 0});
    } else {
      stack.pop_back();
      if (!stack.empty()) euler_.push_back(stack.back().first);
    }
  }
  int len = static_cast<int>(euler_.size());
  int levels = std::bit_width(static_cast<unsigned>(len));
  table_.assign(levels, {});
  table_[0].resize(len);
  for (int i = 0; i < len; ++i) table_[0][i] = i;
  for (int k = 1; k < levels; ++k) {
    int span = 1 << k;
    table_[k].resize(len - span + 1);
    for (int i = 0; i + span <= len; ++i)
      table_[k][i] = better(table_[k - 1][i], table_[k - 1][i + span / 2]);
  }
}

int LcaIndex::lca(int a, int b) const {
  int l = first_[a], r = first_[b];
  if (l > r) std::swap(l, r);
  int k = std::bit_width(static_cast<unsigned>(r - l + 1)) - 1;
  return euler_[better(table_[k][l], table_[k][r - (1 << k) + 1])];
}

CoverOracle::CoverOracle(const ForestCover& cover, int vertex_count) : n_(vertex_count) {
  for (const auto& f : cover.forests)
    for (const RootedTree& t : f) trees_.push_back(&t);
  lca_.reserve(trees_.size());
  membership_.assign(n_, {});
  for (size_t i = 0; i < trees_.size(); ++i) {
    validate_tree(*trees_[i], n_);
    lca_.emplace_back(*trees_[i]);
    for (int x = 0; x < trees_[i]->size(); ++x) {
      int v = trees_[i]->vertex[x];
      if (v >= 0) membership_[v].push_back({static_cast<int>(i), x});
    }
  }
  for (int v = 0; v < n_; ++v)
    if (membership_[v].empty())
      throw InvalidArgument("vertex " + std::to_string(v) + " is in no cover tree");
}

QueryResult CoverOracle::query(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidArgument("query vertex out of range");
  QueryResult res;
  if (u == v) return res;
  res.distance = kInf;
  const auto& a = membership_[u];
  const auto& b = membership_[v];
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (a[i].first > b[j].first) ++j;
    else {
      ++res.lca_lookups;
      double d = lca_[a[i].first].distance(a[i].second, b[j].second);
      if (d < res.distance) {
        res.distance = d;
        res.tree = a[i].first;
      }
      ++i;
      ++j;
    }
  }
  return res;
}

int64_t CoverOracle::space() const {
  int64_t words = 0;
  for (const auto& m : membership_) words += static_cast<int64_t>(m.size());
  for (size_t i = 0; i < trees_.size(); ++i) words += trees_[i]->size();
  return words;
}

RootedTree prune_tree(const RootedTree& tree, const std::vector<char>& is_terminal) {
  int s = tree.size();
  auto terminal = [&](int x) { return tree.vertex[x] >= 0 && is_terminal[tree.vertex[x]]; };
  std::vector<std::vector<std::pair<int, double>>> adj(s);
  for (int i = 0; i < s; ++i)
    if (tree.parent[i] >= 0) {
      adj[i].push_back({tree.parent[i], tree.weight[i]});
      adj[tree.parent[i]].push_back({i, tree.weight[i]});
    }
  std::vector<int> deg(s);
  std::vector<char> alive(s, 1);
  std::vector<int> queue;
  int first_terminal = -1;
  for (int i = 0; i < s; ++i) {
    deg[i] = static_cast<int>(adj[i].size());
    if (terminal(i) && first_terminal < 0) first_terminal = i;
  }
  RootedTree out;
  out.kind = TreeKind::SteinerStar;
  if (first_terminal < 0) return out;
  for (int i = 0; i < s; ++i)
    if (!terminal(i) && deg[i] <= 1) queue.push_back(i);
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    if (!alive[x]) continue;
    alive[x] = 0;
    for (auto [y, w] : adj[x])
      if (alive[y] && --deg[y] <= 1 && !terminal(y)) queue.push_back(y);
  }
  auto kept = [&](int x) { return alive[x] && (terminal(x) || deg[x] != 2); };
  // Walk from kept node x along alive edges, skipping contracted degree-2 nodes.
  std::vector<int> id(s, -1);
  id[first_terminal] = out.add_node(tree.vertex[first_terminal], -1, 0.0);
  out.root = 0;
  std::vector<int> stack{first_terminal};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [y0, w0] : adj[x]) {
      if (!alive[y0]) continue;
      int prev = x, y = y0;
      double w = w0;
      while (!kept(y)) {
        int next = -1;
        double wn = 0;
        for (auto [z, wz] : adj[y])
          if (alive[z] && z != prev) {
            next = z;
            wn = wz;
          }
        prev = y;
        y = next;
        w += wn;
      }
      if (id[y] >= 0) continue;
      id[y] = out.add_node(tree.vertex[y], id[x], w);
      stack.push_back(y);
    }
  }
  return out;
}

Emulator build_emulator(const ForestCover& cover, const std::vector<int>& terminals, int vertex_count) {
  Emulator em;
  em.terminals = terminals;
  std::vector<int> terminal_id(vertex_count, -1);
  std::vector<char> is_terminal(vertex_count, 0);
  for (size_t i = 0; i < terminals.size(); ++i) {
    int t = terminals[i];
    if (t < 0 || t >= vertex_count) throw InvalidArgument("terminal out of range");
    if (terminal_id[t] >= 0) throw InvalidArgument("duplicate terminal");
    terminal_id[t] = static_cast<int>(i);
    is_terminal[t] = 1;
  }
  int next_id = static_cast<int>(terminals.size());
  std::map<std::pair<int, int>, double> edges;
  for (const auto& f : cover.forests)
    for (const RootedTree& t : f) {
      RootedTree p = prune_tree(t, is_terminal);
      em.per_tree_vertex_count.push_back(p.size());
      std::vector<int> id(p.size());
      for (int x = 0; x < p.size(); ++x) {
        int v = p.vertex[x];
        id[x] = (v >= 0 && is_terminal[v]) ? terminal_id[v] : next_id++;
      }
      for (int x = 0; x < p.size(); ++x) {
        if (p.parent[x] < 0) continue;
        auto key = std::minmax(id[x], id[p.parent[x]]);
        auto it = edges.find(key);
        if (it == edges.end() || p.weight[x] < it->second) edges[key] = p.weight[x];
      }
    }
  std::vector<Edge> list;
  for (auto& [k, w] : edges) list.push_back({k.first, k.second, w});
  em.graph = Graph(next_id, std::move(list));
  return em;
}

}  // namespace treecover
