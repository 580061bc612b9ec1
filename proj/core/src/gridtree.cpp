#include "treecover/gridtree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <sstream>
#include <tuple>

#include "treecover/errors.hpp"
#include "treecover/shortest_paths.hpp"

namespace treecover {

namespace {

std::vector<std::vector<int>> components(const Graph& g, const std::vector<int>& vertices,
                                         const std::vector<char>& mask) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.n(), 0);
  for (int s : vertices) {
    if (!mask[s] || seen[s]) continue;
    comps.emplace_back();
    std::vector<int> queue{s};
    seen[s] = 1;
    for (size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      comps.back().push_back(v);
      for (const Arc& a : g.arcs(v))
        if (mask[a.to] && !seen[a.to]) {
          seen[a.to] = 1;
          queue.push_back(a.to);
        }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

std::vector<MultiSource> sources_of(const std::vector<int>& vs) {
  std::vector<MultiSource> src;
  for (int v : vs) src.push_back({v, 0.0, 0});
  return src;
}

std::string list_str(const std::vector<int>& vs, size_t limit = 16) {
  std::ostringstream out;
  out << '{';
  for (size_t i = 0; i < vs.size() && i < limit; ++i) out << (i ? "," : "") << vs[i];
  if (vs.size() > limit) out << ",...";
  out << '}';
  return out.str();
}

}  // namespace

std::vector<std::vector<int>> Gridtree::children() const {
  std::vector<std::vector<int>> ch(columns.size());
  for (size_t c = 0; c < columns.size(); ++c)
    if (columns[c].parent >= 0) ch[columns[c].parent].push_back(static_cast<int>(c));
  return ch;
}

std::vector<int> Gridtree::subtree_vertices(int c) const {
  auto ch = children();
  std::vector<int> out;
  std::vector<int> stack{c};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    out.insert(out.end(), columns[x].vertices.begin(), columns[x].vertices.end());
    out.insert(out.end(), leftover[x].begin(), leftover[x].end());
    for (int y : ch[x]) stack.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SelectionNode> select_paths(const OuterFaceOracle& faces, const std::vector<int>& host,
                                        const std::vector<char>& external, int start, double w) {
  const Graph& g = faces.graph();
  if (!(w > 0)) throw InvalidArgument("gridtree width must be positive");
  if (!external[start]) throw InvalidArgument("path selection must start at an external vertex");
  std::vector<SelectionNode> nodes;
  nodes.push_back({-1, host, {start}, {}, {}});
  for (size_t idx = 0; idx < nodes.size(); ++idx) {
    std::vector<char> mask = make_mask(g.n(), nodes[idx].vertices);
    LabelledForest ball = labelled_dijkstra(g, sources_of(nodes[idx].spine), &mask, w);
    std::vector<char> rest(g.n(), 0);
    std::vector<char> in_n(g.n(), 0);
    for (int v : nodes[idx].vertices) {
      if (ball.dist[v] <= w) {
        in_n[v] = 1;
        nodes[idx].neighborhood.push_back(v);
      } else {
        rest[v] = 1;
      }
    }
    auto comps = components(g, nodes[idx].vertices, rest);
    std::vector<char> outer;
    for (auto& comp : comps) {
      bool has_external = false;
      for (int v : comp) has_external |= external[v] != 0;
      if (!has_external) {
        auto& l = nodes[idx].leftover;
        l.insert(l.end(), comp.begin(), comp.end());
        continue;
      }
      if (outer.empty()) outer = faces.outer_darts(mask);
      std::vector<int> ys;
      for (int y : comp)
        for (const Arc& a : g.arcs(y))
          if (in_n[a.to] && (outer[2 * a.edge] || outer[2 * a.edge + 1])) {
            ys.push_back(y);
            break;
          }
      if (ys.empty() || ys.size() > 2) {
        std::ostringstream msg;
        msg << "path selection found " << ys.size() << " attachment vertices (expected 1 or 2); node "
            << idx << " spine " << list_str(nodes[idx].spine) << " component " << list_str(comp)
            << " attachments " << list_str(ys);
        throw InvariantViolation(msg.str());
      }
      SelectionNode child;
      child.parent = static_cast<int>(idx);
      child.vertices = comp;
      if (ys.size() == 1) {
        child.spine = ys;
      } else {
        std::vector<char> cmask = make_mask(g.n(), comp);
        child.spine = dijkstra(g, ys[0], &cmask).path_to(ys[1]);
      }
      nodes.push_back(std::move(child));
    }
    std::sort(nodes[idx].leftover.begin(), nodes[idx].leftover.end());
  }
  return nodes;
}

Gridtree build_gridtree(const OuterFaceOracle& faces, const std::vector<int>& host,
                        const std::vector<char>& external, double w) {
  const Graph& g = faces.graph();
  int start = -1;
  for (int v : host)
    if (external[v]) {
      start = v;
      break;
    }
  if (start < 0) throw InvalidArgument("host has no external vertex");
  std::vector<SelectionNode> sel = select_paths(faces, host, external, start, w);
  Gridtree t;
  t.width = w;
  t.host = host;
  std::sort(t.host.begin(), t.host.end());
  int k = static_cast<int>(sel.size());
  t.columns.resize(k);
  t.leftover.resize(k);
  std::vector<int> locked(g.n(), -1);
  for (int c = 0; c < k; ++c) {
    Column& col = t.columns[c];
    col.parent = sel[c].parent;
    col.level = col.parent < 0 ? 0 : t.columns[col.parent].level + 1;
    col.vertices = sel[c].neighborhood;
    col.spine = sel[c].spine;
    t.leftover[c] = sel[c].leftover;
    for (int v : col.vertices) locked[v] = c;
  }
  // Pull vertices within 2w of a spine into the nearest column. A label is
  // (column, spine position); column vertices only accept their own column.
  std::vector<int> label_column;
  using Item = std::tuple<double, int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  std::vector<double> dist(g.n(), kInf);
  std::vector<int> label(g.n(), -1);
  std::vector<char> in_host = make_mask(g.n(), host), done(g.n(), 0);
  for (int c = 0; c < k; ++c)
    for (int v : t.columns[c].spine) {
      int l = static_cast<int>(label_column.size());
      label_column.push_back(c);
      if (0.0 < dist[v] || l < label[v]) {
        dist[v] = 0.0;
        label[v] = l;
        pq.push({0.0, l, v});
      }
    }
  double radius = 2 * w;
  while (!pq.empty()) {
    auto [d, l, v] = pq.top();
    pq.pop();
    if (done[v] || d != dist[v] || l != label[v]) continue;
    done[v] = 1;
    for (const Arc& a : g.arcs(v)) {
      int u = a.to;
      if (!in_host[u] || done[u]) continue;
      if (locked[u] >= 0 && locked[u] != label_column[l]) continue;
      double nd = d + g.edge(a.edge).w;
      if (nd > radius) continue;
      if (nd < dist[u] || (nd == dist[u] && l < label[u])) {
        dist[u] = nd;
        label[u] = l;
        pq.push({nd, l, u});
      }
    }
  }
  for (int c = 0; c < k; ++c) {
    auto& left = t.leftover[c];
    std::vector<int> keep;
    for (int v : left) {
      if (done[v]) t.columns[label_column[label[v]]].vertices.push_back(v);
      else keep.push_back(v);
    }
    left = std::move(keep);
  }
  for (auto& col : t.columns) std::sort(col.vertices.begin(), col.vertices.end());
  return t;
}

int GridtreeHierarchy::depth() const {
  int d = 0;
  for (const auto& node : nodes) d = std::max(d, node.layer + 1);
  return d;
}

GridtreeHierarchy build_hierarchy(const Graph& g, const Embedding& emb, double w) {
  require_connected(g);
  if (!(w > 0)) throw InvalidArgument("gridtree width must be positive");
  OuterFaceOracle faces(g, emb);
  GridtreeHierarchy h;
  h.width = w;
  HierarchyNode root;
  std::vector<int> all(g.n());
  for (int v = 0; v < g.n(); ++v) all[v] = v;
  std::vector<char> ext = faces.outer_vertices(std::vector<char>(g.n(), 1));
  for (int v = 0; v < g.n(); ++v)
    if (ext[v]) root.external.push_back(v);
  root.tree.host = all;
  h.nodes.push_back(std::move(root));
  for (size_t idx = 0; idx < h.nodes.size(); ++idx) {
    std::vector<char> ext_mask = make_mask(g.n(), h.nodes[idx].external);
    Gridtree t = build_gridtree(faces, h.nodes[idx].tree.host, ext_mask, w);
    std::vector<char> in_column(g.n(), 0), left(g.n(), 0);
    for (const auto& col : t.columns)
      for (int v : col.vertices) in_column[v] = 1;
    std::vector<int> left_list;
    for (const auto& l : t.leftover)
      for (int v : l) {
        left[v] = 1;
        left_list.push_back(v);
      }
    std::sort(left_list.begin(), left_list.end());
    auto comps = components(g, left_list, left);
    int layer = h.nodes[idx].layer;
    h.nodes[idx].tree = std::move(t);
    for (auto& comp : comps) {
      HierarchyNode child;
      child.parent = static_cast<int>(idx);
      child.layer = layer + 1;
      std::vector<char> cmask = make_mask(g.n(), comp);
      std::vector<char> geo = faces.outer_vertices(cmask);
      for (int v : comp) {
        bool outer = false;
        for (const Arc& a : g.arcs(v)) outer |= in_column[a.to] != 0;
        if (outer) child.outer.push_back(v);
        if (outer || geo[v]) child.external.push_back(v);
      }
      child.tree.host = comp;
      h.nodes[idx].children.push_back(static_cast<int>(h.nodes.size()));
      h.nodes.push_back(std::move(child));
    }
  }
  return h;
}

GridtreeReport check_gridtree(const Graph& g, const Gridtree& t) {
  GridtreeReport r;
  double w = t.width;
  double tol = 1e-9 * std::max(1.0, w);
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    r.ok = false;
    if (r.failures.size() < 20) r.failures.push_back(msg);
  };
  int k = static_cast<int>(t.columns.size());
  // Part of each vertex: column c -> c, leftover on edge (parent(c), c) -> k + c.
  std::vector<int> part(g.n(), -1);
  std::vector<char> in_host = make_mask(g.n(), t.host);
  auto assign = [&](int v, int p) {
    if (v < 0 || v >= g.n() || !in_host[v]) {
      fail(r.partition, "vertex " + std::to_string(v) + " lies outside the host");
      return;
    }
    if (part[v] >= 0) fail(r.partition, "vertex " + std::to_string(v) + " is in two parts");
    part[v] = p;
  };
  for (int c = 0; c < k; ++c) {
    for (int v : t.columns[c].vertices) assign(v, c);
    for (int v : t.leftover[c]) assign(v, k + c);
    if (t.columns[c].vertices.empty()) fail(r.partition, "column " + std::to_string(c) + " is empty");
  }
  for (int v : t.host)
    if (part[v] < 0) fail(r.partition, "vertex " + std::to_string(v) + " is in no part");
  if (!r.partition) return r;
  auto ch = t.children();
  auto adjacent_columns = [&](int a, int b) {
    return t.columns[a].parent == b || t.columns[b].parent == a;
  };
  auto incident = [&](int c, int edge_child) {
    return c == edge_child || c == t.columns[edge_child].parent;
  };
  for (const Edge& e : g.edges()) {
    if (!in_host[e.u] || !in_host[e.v]) continue;
    int a = part[e.u], b = part[e.v];
    if (a == b) continue;
    bool ok;
    if (a < k && b < k) ok = adjacent_columns(a, b);
    else if (a < k) ok = b >= k && incident(a, b - k);
    else if (b < k) ok = incident(b, a - k);
    else ok = false;
    if (!ok)
      fail(r.adjacency, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                            " violates column adjacency");
  }
  // Subtree membership for above/below.
  std::vector<int> tin(k), tout(k);
  {
    int timer = 0;
    std::vector<std::pair<int, size_t>> stack;
    for (int c = 0; c < k; ++c) {
      if (t.columns[c].parent >= 0) continue;
      stack.push_back({c, 0});
      tin[c] = timer++;
      while (!stack.empty()) {
        auto& [x, i] = stack.back();
        if (i < ch[x].size()) {
          int y = ch[x][i++];
          tin[y] = timer++;
          stack.push_back({y, 0});
        } else {
          tout[x] = timer;
          stack.pop_back();
        }
      }
    }
  }
  auto in_subtree = [&](int x, int root) { return tin[root] <= tin[x] && tin[x] < tout[root]; };
  r.min_passing_length = kInf;
  r.min_parent_passing_length = kInf;
  // Shortest path from a column vertex adjacent to `above` to a vertex below,
  // avoiding `above`.
  auto passing = [&](int c, const std::vector<char>& above, const std::vector<char>& below,
                     bool& flag, double& min_len, const char* what) {
    std::vector<char> scope(g.n(), 0);
    for (int v : t.host) scope[v] = !above[v];
    std::vector<MultiSource> src;
    for (int a : t.columns[c].vertices) {
      bool touches = false;
      for (const Arc& arc : g.arcs(a)) touches |= above[arc.to] != 0;
      if (touches) src.push_back({a, 0.0, a});
    }
    if (src.empty()) return;
    LabelledForest f = labelled_dijkstra(g, src, &scope, w);
    for (int v : t.host)
      if (below[v] && f.dist[v] < kInf) {
        min_len = std::min(min_len, f.dist[v]);
        if (f.dist[v] < w - tol)
          fail(flag, std::string(what) + " path from " + std::to_string(f.label[v]) + " to " +
                         std::to_string(v) + " passes column " + std::to_string(c) + " with length " +
                         std::to_string(f.dist[v]));
      }
  };
  for (int c = 0; c < k; ++c) {
    const Column& col = t.columns[c];
    // Below: strictly deeper columns, and leftover sets on edges to them.
    // Above: everything else outside the column, including the leftover set
    // on c's own parent edge.
    std::vector<char> below(g.n(), 0), above(g.n(), 0), outside(g.n(), 0);
    for (int v : t.host) {
      int p = part[v];
      int x = p < k ? p : p - k;
      if (p == c) continue;
      if (x != c && in_subtree(x, c)) below[v] = 1;
      else above[v] = 1;
      if (!in_subtree(x, c)) outside[v] = 1;
    }
    passing(c, above, below, r.width, r.min_passing_length, "width:");
    passing(c, outside, below, r.parent_width, r.min_parent_passing_length, "parent width:");
    // Column shortcut: spine is a path, shortest in H_c, and the column stays
    // within 2w of it inside the column.
    if (col.spine.empty()) {
      fail(r.shortcut, "column " + std::to_string(c) + " has no spine");
      continue;
    }
    std::vector<char> cmask = make_mask(g.n(), col.vertices);
    double len = 0;
    bool path_ok = true;
    for (size_t i = 0; i < col.spine.size(); ++i) {
      if (!cmask[col.spine[i]]) path_ok = false;
      if (i > 0) {
        int e = g.find_edge(col.spine[i - 1], col.spine[i]);
        if (e < 0) path_ok = false;
        else len += g.edge(e).w;
      }
    }
    if (!path_ok) {
      fail(r.shortcut, "spine of column " + std::to_string(c) + " is not a path in the column");
      continue;
    }
    std::vector<int> sub = t.subtree_vertices(c);
    std::vector<char> smask = make_mask(g.n(), sub);
    ShortestPathTree sp = dijkstra(g, col.spine.front(), &smask);
    if (len > sp.dist[col.spine.back()] + tol)
      fail(r.shortcut, "spine of column " + std::to_string(c) + " is not a shortest path");
    LabelledForest near = labelled_dijkstra(g, sources_of(col.spine), &cmask, 2 * w + tol);
    for (int v : col.vertices)
      if (!(near.dist[v] <= 2 * w + tol))
        fail(r.shortcut, "vertex " + std::to_string(v) + " is farther than 2w from the spine of column " +
                             std::to_string(c));
  }
  if (r.min_passing_length == kInf) r.min_passing_length = 0.0;
  if (r.min_parent_passing_length == kInf) r.min_parent_passing_length = 0.0;
  return r;
}

HierarchyReport check_hierarchy(const Graph& g, const GridtreeHierarchy& h, double delta) {
  HierarchyReport r;
  double w = h.width;
  double tol = 1e-9 * std::max(1.0, w);
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    r.ok = false;
    if (r.failures.size() < 20) r.failures.push_back(msg);
  };
  r.depth_value = h.depth();
  r.depth_bound = static_cast<int>(std::ceil(delta / w - 1e-12)) + 1;
  if (r.depth_value > r.depth_bound)
    fail(r.depth, "depth " + std::to_string(r.depth_value) + " exceeds " + std::to_string(r.depth_bound));
  r.min_passing_length = kInf;
  r.min_parent_passing_length = kInf;
  for (size_t i = 0; i < h.nodes.size(); ++i) {
    const HierarchyNode& node = h.nodes[i];
    GridtreeReport gr = check_gridtree(g, node.tree);
    if (gr.min_passing_length > 0) r.min_passing_length = std::min(r.min_passing_length, gr.min_passing_length);
    if (gr.min_parent_passing_length > 0)
      r.min_parent_passing_length = std::min(r.min_parent_passing_length, gr.min_parent_passing_length);
    if (!gr.width) r.width = false;
    if (!gr.parent_width) r.parent_width = false;
    bool structural = gr.partition && gr.adjacency && gr.shortcut;
    if (!structural) r.gridtrees = false;
    if (!gr.ok) {
      r.ok = false;
      for (const auto& f : gr.failures)
        if (r.failures.size() < 20) r.failures.push_back("node " + std::to_string(i) + ": " + f);
    }
    std::vector<char> host = make_mask(g.n(), node.tree.host);
    if (!is_connected(g, host)) fail(r.nesting, "node " + std::to_string(i) + " host is disconnected");
    // Children must be exactly the components of the leftover sets.
    std::vector<char> left(g.n(), 0);
    std::vector<int> left_list;
    for (const auto& l : node.tree.leftover)
      for (int v : l) {
        left[v] = 1;
        left_list.push_back(v);
      }
    std::sort(left_list.begin(), left_list.end());
    auto comps = components(g, left_list, left);
    std::vector<std::vector<int>> hosts;
    for (int c : node.children) hosts.push_back(h.nodes[c].tree.host);
    std::sort(comps.begin(), comps.end());
    std::sort(hosts.begin(), hosts.end());
    if (comps != hosts)
      fail(r.nesting, "node " + std::to_string(i) + " children differ from leftover components");
    if (node.parent >= 0 && !node.outer.empty()) {
      std::vector<char> in_column(g.n(), 0);
      for (const auto& col : node.tree.columns)
        for (int v : col.vertices) in_column[v] = 1;
      LabelledForest f = labelled_dijkstra(g, sources_of(node.outer), &host, w);
      for (int v : node.tree.host)
        if (f.dist[v] <= w - tol && !in_column[v])
          fail(r.layer_width, "node " + std::to_string(i) + ": vertex " + std::to_string(v) +
                                  " near an outer vertex is in no column");
    }
  }
  if (r.min_passing_length == kInf) r.min_passing_length = 0.0;
  if (r.min_parent_passing_length == kInf) r.min_parent_passing_length = 0.0;
  return r;
}

}  // namespace treecover
