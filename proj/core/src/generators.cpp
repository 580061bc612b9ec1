#include "treecover/generators.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "treecover/errors.hpp"

namespace treecover {

namespace {

class WeightDraw {
 public:
  WeightDraw(double lo, double hi, std::mt19937_64& rng) : lo_(lo), hi_(hi), rng_(rng) {
    if (!(lo >= 0) || !(hi >= lo)) throw InvalidArgument("weight range must satisfy 0 <= wmin <= wmax");
  }
  double operator()() {
    if (lo_ == hi_) return lo_;
    return std::uniform_real_distribution<double>(lo_, hi_)(rng_);
  }

 private:
  double lo_, hi_;
  std::mt19937_64& rng_;
};

// Rotation lists of neighbor ids turned into edge ids.
Embedding rotation_from_neighbors(const Graph& g, const std::vector<std::vector<int>>& order) {
  Embedding emb;
  emb.rotation.resize(g.n());
  for (int v = 0; v < g.n(); ++v)
    for (int u : order[v]) emb.rotation[v].push_back(g.find_edge(v, u));
  return emb;
}

void set_outer_face(const Graph& g, Embedding& emb, int from, int to) {
  int e = g.find_edge(from, to);
  int start = dart_of(e, g.edge(e).u != from);
  RotationIndex idx(g, emb);
  emb.outer_face.clear();
  int d = start;
  do {
    emb.outer_face.push_back(d);
    d = idx.face_next(d);
  } while (d != start);
}

Instance make_grid(const GenParams& p, std::mt19937_64& rng) {
  int R = p.rows, C = p.cols;
  if (R < 1 || C < 1) throw InvalidArgument("grid needs rows, cols >= 1");
  WeightDraw draw(p.wmin, p.wmax, rng);
  auto id = [C](int r, int c) { return r * C + c; };
  std::vector<Edge> edges;
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) {
      if (c + 1 < C) edges.push_back({id(r, c), id(r, c + 1), draw()});
      if (r + 1 < R) edges.push_back({id(r, c), id(r + 1, c), draw()});
    }
  Instance inst;
  inst.graph = Graph(R * C, std::move(edges));
  // Row 0 is the top row; counter-clockwise order is east, north, west, south.
  std::vector<std::vector<int>> order(R * C);
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) {
      auto& o = order[id(r, c)];
      if (c + 1 < C) o.push_back(id(r, c + 1));
      if (r > 0) o.push_back(id(r - 1, c));
      if (c > 0) o.push_back(id(r, c - 1));
      if (r + 1 < R) o.push_back(id(r + 1, c));
    }
  Embedding emb = rotation_from_neighbors(inst.graph, order);
  if (inst.graph.m() > 0) {
    if (C >= 2) set_outer_face(inst.graph, emb, id(0, 0), id(0, 1));
    else set_outer_face(inst.graph, emb, id(0, 0), id(1, 0));
  }
  inst.embedding = std::move(emb);
  return inst;
}

Instance make_cylinder(const GenParams& p, std::mt19937_64& rng) {
  int H = p.rows, K = p.cols;
  if (H < 1 || K < 3) throw InvalidArgument("cylinder-grid needs height >= 1, circumference >= 3");
  WeightDraw draw(p.wmin, p.wmax, rng);
  // Ring 0 is outermost; vertex (j, i) sits at angle 2*pi*i/K.
  auto id = [K](int j, int i) { return j * K + ((i % K) + K) % K; };
  std::vector<Edge> edges;
  for (int j = 0; j < H; ++j)
    for (int i = 0; i < K; ++i) {
      edges.push_back({id(j, i), id(j, i + 1), draw()});
      if (j + 1 < H) edges.push_back({id(j, i), id(j + 1, i), draw()});
    }
  Instance inst;
  inst.graph = Graph(H * K, std::move(edges));
  std::vector<std::vector<int>> order(H * K);
  for (int j = 0; j < H; ++j)
    for (int i = 0; i < K; ++i) {
      auto& o = order[id(j, i)];
      if (j > 0) o.push_back(id(j - 1, i));
      o.push_back(id(j, i + 1));
      if (j + 1 < H) o.push_back(id(j + 1, i));
      o.push_back(id(j, i - 1));
    }
  Embedding emb = rotation_from_neighbors(inst.graph, order);
  set_outer_face(inst.graph, emb, id(0, 1), id(0, 0));
  inst.embedding = std::move(emb);
  return inst;
}

Instance make_triangulation(const GenParams& p, std::mt19937_64& rng) {
  int n = p.n;
  if (n < 3) throw InvalidArgument("random-triangulation needs n >= 3");
  if (p.delete_fraction < 0 || p.delete_fraction > 1) throw InvalidArgument("delete fraction in [0,1]");
  // Cyclic neighbor orders (counter-clockwise) and inner triangular faces.
  std::vector<std::vector<int>> rot(n);
  rot[0] = {1, 2};
  rot[1] = {2, 0};
  rot[2] = {0, 1};
  std::vector<std::array<int, 3>> faces{{0, 1, 2}};
  auto insert_after = [&](int v, int after, int x) {
    auto& r = rot[v];
    auto it = std::find(r.begin(), r.end(), after);
    r.insert(it + 1, x);
  };
  for (int x = 3; x < n; ++x) {
    size_t f = std::uniform_int_distribution<size_t>(0, faces.size() - 1)(rng);
    auto [a, b, c] = faces[f];
    insert_after(a, b, x);
    insert_after(b, c, x);
    insert_after(c, a, x);
    rot[x] = {a, b, c};
    faces[f] = {a, b, x};
    faces.push_back({b, c, x});
    faces.push_back({c, a, x});
  }
  // Drop random non-bridge edges away from the outer triangle.
  std::vector<std::pair<int, int>> candidates;
  for (int v = 0; v < n; ++v)
    for (int u : rot[v])
      if (v < u && !(v < 3 && u < 3)) candidates.push_back({v, u});
  std::shuffle(candidates.begin(), candidates.end(), rng);
  size_t target = static_cast<size_t>(p.delete_fraction * static_cast<double>(candidates.size()));
  size_t removed = 0;
  auto connected_without = [&](int a, int b) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == b) return true;
      for (int u : rot[v]) {
        if ((v == a && u == b) || (v == b && u == a)) continue;
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    return false;
  };
  for (auto [a, b] : candidates) {
    if (removed >= target) break;
    if (!connected_without(a, b)) continue;
    rot[a].erase(std::find(rot[a].begin(), rot[a].end(), b));
    rot[b].erase(std::find(rot[b].begin(), rot[b].end(), a));
    ++removed;
  }
  WeightDraw draw(p.wmin, p.wmax, rng);
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    std::vector<int> nb = rot[v];
    std::sort(nb.begin(), nb.end());
    for (int u : nb)
      if (v < u) edges.push_back({v, u, draw()});
  }
  Instance inst;
  inst.graph = Graph(n, std::move(edges));
  Embedding emb = rotation_from_neighbors(inst.graph, rot);
  set_outer_face(inst.graph, emb, 0, 2);
  inst.embedding = std::move(emb);
  return inst;
}

Instance make_series_parallel(const GenParams& p, std::mt19937_64& rng) {
  int n = p.n;
  if (n < 2) throw InvalidArgument("series-parallel needs n >= 2");
  if (p.delete_fraction < 0 || p.delete_fraction > 1) throw InvalidArgument("delete fraction in [0,1]");
  // A random 2-tree; each new vertex attaches to both ends of an existing edge.
  std::vector<std::pair<int, int>> tree_edges_list{{0, 1}};
  std::vector<int> edge_bag{0};
  TreeDecomposition td;
  td.vertex_count = n;
  td.bags.push_back({0, 1});
  for (int x = 2; x < n; ++x) {
    size_t pick = std::uniform_int_distribution<size_t>(0, tree_edges_list.size() - 1)(rng);
    auto [u, v] = tree_edges_list[pick];
    int bag = static_cast<int>(td.bags.size());
    std::vector<int> b{u, v, x};
    std::sort(b.begin(), b.end());
    td.bags.push_back(b);
    td.tree_edges.push_back({edge_bag[pick], bag});
    tree_edges_list.push_back({u, x});
    edge_bag.push_back(bag);
    tree_edges_list.push_back({v, x});
    edge_bag.push_back(bag);
  }
  std::vector<char> keep(tree_edges_list.size(), 1);
  std::vector<size_t> idx(tree_edges_list.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  size_t target = static_cast<size_t>(p.delete_fraction * static_cast<double>(idx.size()));
  size_t removed = 0;
  for (size_t i : idx) {
    if (removed >= target) break;
    keep[i] = 0;
    std::vector<Edge> trial;
    for (size_t j = 0; j < keep.size(); ++j)
      if (keep[j]) trial.push_back({tree_edges_list[j].first, tree_edges_list[j].second, 1.0});
    if (is_connected(Graph(n, std::move(trial)))) ++removed;
    else keep[i] = 1;
  }
  WeightDraw draw(p.wmin, p.wmax, rng);
  std::vector<Edge> edges;
  for (size_t j = 0; j < keep.size(); ++j)
    if (keep[j]) edges.push_back({tree_edges_list[j].first, tree_edges_list[j].second, draw()});
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::min(a.u, a.v) != std::min(b.u, b.v) ? std::min(a.u, a.v) < std::min(b.u, b.v)
                                                    : std::max(a.u, a.v) < std::max(b.u, b.v);
  });
  Instance inst;
  inst.graph = Graph(n, std::move(edges));
  inst.decomposition = std::move(td);
  return inst;
}

}  // namespace

Instance generate(const GenParams& p) {
  std::mt19937_64 rng(p.seed);
  switch (p.kind) {
    case InstanceKind::Grid: return make_grid(p, rng);
    case InstanceKind::CylinderGrid: return make_cylinder(p, rng);
    case InstanceKind::RandomTriangulation: return make_triangulation(p, rng);
    case InstanceKind::SeriesParallel: return make_series_parallel(p, rng);
  }
  throw InvalidArgument("unknown instance kind");
}

InstanceKind parse_instance_kind(const std::string& name) {
  if (name == "grid") return InstanceKind::Grid;
  if (name == "cylinder-grid") return InstanceKind::CylinderGrid;
  if (name == "random-triangulation") return InstanceKind::RandomTriangulation;
  if (name == "series-parallel") return InstanceKind::SeriesParallel;
  throw InvalidArgument("unknown instance kind: " + name);
}

std::string instance_kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Grid: return "grid";
    case InstanceKind::CylinderGrid: return "cylinder-grid";
    case InstanceKind::RandomTriangulation: return "random-triangulation";
    case InstanceKind::SeriesParallel: return "series-parallel";
  }
  return "unknown";
}

}  // namespace treecover
