#include "treecover/tree_decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "treecover/errors.hpp"

namespace treecover {

int TreeDecomposition::width() const {
  size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return static_cast<int>(w) - 1;
}

std::vector<std::vector<int>> TreeDecomposition::tree_adjacency() const {
  std::vector<std::vector<int>> adj(bags.size());
  for (auto [a, b] : tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

void validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  int nb = static_cast<int>(td.bags.size());
  if (nb == 0) {
    if (g.n() == 0) return;
    throw InvariantViolation("decomposition has no bags");
  }
  if (static_cast<int>(td.tree_edges.size()) != nb - 1)
    throw InvariantViolation("decomposition tree has wrong edge count");
  auto adj = td.tree_adjacency();
  for (auto [a, b] : td.tree_edges)
    if (a < 0 || b < 0 || a >= nb || b >= nb || a == b)
      throw InvariantViolation("bad decomposition tree edge");
  {
    std::vector<char> seen(nb, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
    }
    if (count != nb) throw InvariantViolation("decomposition tree is disconnected");
  }
  std::vector<std::vector<int>> bags_of(g.n());
  for (int b = 0; b < nb; ++b)
    for (int v : td.bags[b]) {
      if (v < 0 || v >= g.n()) throw InvariantViolation("bag vertex out of range");
      bags_of[v].push_back(b);
    }
  std::vector<char> in(nb, 0), seen(nb, 0);
  for (int v = 0; v < g.n(); ++v) {
    if (bags_of[v].empty())
      throw InvariantViolation("vertex " + std::to_string(v) + " is in no bag");
    for (int b : bags_of[v]) in[b] = 1;
    std::vector<int> stack{bags_of[v][0]};
    seen[bags_of[v][0]] = 1;
    size_t count = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (in[y] && !seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
    }
    for (int b : bags_of[v]) in[b] = seen[b] = 0;
    if (count != bags_of[v].size())
      throw InvariantViolation("bags containing vertex " + std::to_string(v) +
                               " are not connected");
  }
  for (const Edge& e : g.edges()) {
    bool found = false;
    for (int b : bags_of[e.u])
      if (std::binary_search(td.bags[b].begin(), td.bags[b].end(), e.v)) {
        found = true;
        break;
      }
    if (!found)
      throw InvariantViolation("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                               " is in no bag");
  }
}

TreeDecomposition min_fill_decomposition(const Graph& g) {
  int n = g.n();
  TreeDecomposition td;
  td.vertex_count = n;
  if (n == 0) return td;
  int words = (n + 63) / 64;
  std::vector<std::vector<uint64_t>> adj(n, std::vector<uint64_t>(words, 0));
  auto has = [&](int a, int b) { return (adj[a][b >> 6] >> (b & 63)) & 1; };
  auto set = [&](int a, int b) {
    adj[a][b >> 6] |= uint64_t{1} << (b & 63);
    adj[b][a >> 6] |= uint64_t{1} << (a & 63);
  };
  std::vector<std::vector<int>> nbr(n);
  for (const Edge& e : g.edges()) set(e.u, e.v);
  for (int v = 0; v < n; ++v)
    for (const Arc& a : g.arcs(v)) nbr[v].push_back(a.to);
  std::vector<char> alive(n, 1);
  auto fill_of = [&](int v) {
    long f = 0;
    const auto& nv = nbr[v];
    for (size_t i = 0; i < nv.size(); ++i)
      for (size_t j = i + 1; j < nv.size(); ++j)
        if (!has(nv[i], nv[j])) ++f;
    return f;
  };
  std::vector<long> fill(n);
  for (int v = 0; v < n; ++v) fill[v] = fill_of(v);
  std::vector<int> order, position(n, -1);
  std::vector<std::vector<int>> bag_nbrs(n);
  std::vector<int> mark(n, -1);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      if (best < 0 || fill[v] < fill[best] ||
          (fill[v] == fill[best] && nbr[v].size() < nbr[best].size()))
        best = v;
    }
    int v = best;
    position[v] = step;
    order.push_back(v);
    bag_nbrs[v] = nbr[v];
    const auto nv = nbr[v];
    for (size_t i = 0; i < nv.size(); ++i)
      for (size_t j = i + 1; j < nv.size(); ++j)
        if (!has(nv[i], nv[j])) {
          set(nv[i], nv[j]);
          nbr[nv[i]].push_back(nv[j]);
          nbr[nv[j]].push_back(nv[i]);
        }
    alive[v] = 0;
    for (int u : nv) {
      auto& nu = nbr[u];
      nu.erase(std::remove(nu.begin(), nu.end(), v), nu.end());
      std::sort(nu.begin(), nu.end());
    }
    // Fill counts change only within distance two of v.
    std::vector<int> touched;
    for (int u : nv) {
      if (mark[u] != step) {
        mark[u] = step;
        touched.push_back(u);
      }
      for (int x : nbr[u])
        if (mark[x] != step) {
          mark[x] = step;
          touched.push_back(x);
        }
    }
    for (int u : touched) fill[u] = fill_of(u);
  }
  td.bags.resize(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> b = bag_nbrs[v];
    b.push_back(v);
    std::sort(b.begin(), b.end());
    td.bags[position[v]] = std::move(b);
  }
  // Bag i (eliminating order[i]) hangs below the bag of its earliest-eliminated
  // remaining neighbor.
  std::vector<int> root_bags;
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    int parent = -1;
    for (int u : bag_nbrs[v])
      if (parent < 0 || position[u] < parent) parent = position[u];
    if (parent >= 0) td.tree_edges.push_back({i, parent});
    else root_bags.push_back(i);
  }
  for (size_t i = 1; i < root_bags.size(); ++i) td.tree_edges.push_back({root_bags[0], root_bags[i]});
  return td;
}

std::string write_pace(const TreeDecomposition& td) {
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << td.vertex_count << '\n';
  for (size_t b = 0; b < td.bags.size(); ++b) {
    out << "b " << b + 1;
    for (int v : td.bags[b]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

TreeDecomposition read_pace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  TreeDecomposition td;
  bool header = false;
  int declared_width = 0;
  size_t nb = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 's') {
      std::string s, kind;
      ls >> s >> kind >> nb >> declared_width >> td.vertex_count;
      if (!ls || kind != "td") throw InvalidArgument("bad .td header: " + line);
      td.bags.assign(nb, {});
      header = true;
    } else if (line[0] == 'b') {
      if (!header) throw InvalidArgument(".td bag before header");
      std::string b;
      size_t id;
      ls >> b >> id;
      if (!ls || id < 1 || id > nb) throw InvalidArgument("bad bag line: " + line);
      int v;
      while (ls >> v) {
        if (v < 1 || v > td.vertex_count) throw InvalidArgument("bag vertex out of range: " + line);
        td.bags[id - 1].push_back(v - 1);
      }
      std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
    } else {
      if (!header) throw InvalidArgument(".td edge before header");
      size_t a, b;
      ls >> a >> b;
      if (!ls || a < 1 || b < 1 || a > nb || b > nb) throw InvalidArgument("bad tree edge: " + line);
      td.tree_edges.push_back({static_cast<int>(a - 1), static_cast<int>(b - 1)});
    }
  }
  if (!header) throw InvalidArgument(".td header missing");
  if (nb > 0 && td.width() + 1 != declared_width)
    throw InvalidArgument(".td declared width does not match bags");
  return td;
}

}  // namespace treecover
