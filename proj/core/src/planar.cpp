#include "treecover/planar.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "treecover/errors.hpp"

namespace treecover {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

RotationIndex::RotationIndex(const Graph& g, const Embedding& emb) : g_(&g), emb_(&emb) {
  if (static_cast<int>(emb.rotation.size()) != g.n())
    throw NotPlanarEmbedding("rotation system has wrong vertex count");
  pos_.assign(2 * g.m(), -1);
  for (int v = 0; v < g.n(); ++v) {
    const auto& rot = emb.rotation[v];
    if (static_cast<int>(rot.size()) != g.degree(v))
      throw NotPlanarEmbedding("rotation at vertex " + std::to_string(v) + " does not list its edges");
    for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
      int e = rot[i];
      if (e < 0 || e >= g.m()) throw NotPlanarEmbedding("rotation references unknown edge");
      const Edge& ed = g.edge(e);
      int d;
      if (ed.u == v) d = dart_of(e, false);
      else if (ed.v == v) d = dart_of(e, true);
      else throw NotPlanarEmbedding("rotation at " + std::to_string(v) + " lists a non-incident edge");
      if (pos_[d] >= 0) throw NotPlanarEmbedding("edge repeated in rotation");
      pos_[d] = i;
    }
  }
}

int RotationIndex::next_ccw(int d) const {
  int v = dart_tail(*g_, d);
  const auto& rot = emb_->rotation[v];
  int e = rot[(pos_[d] + 1) % rot.size()];
  return dart_of(e, g_->edge(e).u != v);
}

int RotationIndex::prev_ccw(int d) const {
  int v = dart_tail(*g_, d);
  const auto& rot = emb_->rotation[v];
  int e = rot[(pos_[d] + rot.size() - 1) % rot.size()];
  return dart_of(e, g_->edge(e).u != v);
}

FaceSet trace_faces(const Graph& g, const Embedding& emb) {
  RotationIndex idx(g, emb);
  FaceSet fs;
  fs.face_of_dart.assign(2 * g.m(), -1);
  for (int d0 = 0; d0 < 2 * g.m(); ++d0) {
    if (fs.face_of_dart[d0] >= 0) continue;
    int id = static_cast<int>(fs.faces.size());
    fs.faces.emplace_back();
    for (int d = d0; fs.face_of_dart[d] < 0; d = idx.face_next(d)) {
      fs.face_of_dart[d] = id;
      fs.faces.back().push_back(d);
    }
    if (fs.faces.back().front() != d0 || idx.face_next(fs.faces.back().back()) != d0)
      throw NotPlanarEmbedding("face walk does not close");
  }
  if (g.m() == 0) fs.faces.emplace_back();
  long expected = static_cast<long>(g.m()) - g.n() + 2;
  if (static_cast<long>(fs.faces.size()) != expected)
    throw NotPlanarEmbedding("Euler check failed: " + std::to_string(fs.faces.size()) +
                             " faces, expected " + std::to_string(expected));
  if (g.m() == 0) {
    fs.outer = 0;
    return fs;
  }
  if (emb.outer_face.empty()) throw NotPlanarEmbedding("outer face missing");
  for (int d : emb.outer_face)
    if (d < 0 || d >= 2 * g.m()) throw NotPlanarEmbedding("outer face dart out of range");
  fs.outer = fs.face_of_dart[emb.outer_face.front()];
  const auto& face = fs.faces[fs.outer];
  bool same = face.size() == emb.outer_face.size();
  if (same) {
    // Accept any cyclic rotation of the traced walk.
    size_t shift = 0;
    while (shift < face.size() && face[shift] != emb.outer_face.front()) ++shift;
    for (size_t i = 0; same && i < face.size(); ++i)
      same = face[(shift + i) % face.size()] == emb.outer_face[i];
  }
  if (!same) throw NotPlanarEmbedding("outer face is not a traced face");
  return fs;
}

OuterFaceOracle::OuterFaceOracle(const Graph& g, const Embedding& emb)
    : g_(&g), faces_(trace_faces(g, emb)) {}

std::vector<char> OuterFaceOracle::outer_darts(const std::vector<char>& mask) const {
  const Graph& g = *g_;
  Dsu dsu(static_cast<int>(faces_.faces.size()));
  for (int e = 0; e < g.m(); ++e)
    if (!mask[g.edge(e).u] || !mask[g.edge(e).v])
      dsu.unite(faces_.face_of_dart[2 * e], faces_.face_of_dart[2 * e + 1]);
  int outer = dsu.find(faces_.outer);
  std::vector<char> res(2 * g.m(), 0);
  for (int e = 0; e < g.m(); ++e) {
    if (!mask[g.edge(e).u] || !mask[g.edge(e).v]) continue;
    for (int d = 2 * e; d <= 2 * e + 1; ++d)
      res[d] = dsu.find(faces_.face_of_dart[d]) == outer;
  }
  return res;
}

std::vector<char> OuterFaceOracle::outer_vertices(const std::vector<char>& mask) const {
  const Graph& g = *g_;
  std::vector<char> darts = outer_darts(mask);
  std::vector<char> res(g.n(), 0);
  for (int d = 0; d < 2 * g.m(); ++d)
    if (darts[d]) {
      res[dart_tail(g, d)] = 1;
      res[dart_head(g, d)] = 1;
    }
  for (int v = 0; v < g.n(); ++v) {
    if (!mask[v] || res[v]) continue;
    bool isolated = true;
    for (const Arc& a : g.arcs(v))
      if (mask[a.to]) isolated = false;
    if (isolated) res[v] = 1;
  }
  return res;
}

Embedding induced_embedding(const OuterFaceOracle& oracle, const Embedding& emb,
                            const Subgraph& sub) {
  const Graph& g = oracle.graph();
  const Graph& h = sub.graph;
  std::vector<int> local_edge(g.m(), -1);
  for (int e = 0; e < h.m(); ++e) local_edge[sub.edge_to_parent[e]] = e;
  Embedding out;
  out.rotation.resize(h.n());
  for (int v = 0; v < h.n(); ++v)
    for (int e : emb.rotation[sub.to_parent[v]])
      if (local_edge[e] >= 0) out.rotation[v].push_back(local_edge[e]);
  if (h.m() == 0) return out;
  std::vector<char> mask(g.n(), 0);
  for (int v : sub.to_parent) mask[v] = 1;
  std::vector<char> outer = oracle.outer_darts(mask);
  int start = -1;
  for (int e = 0; e < h.m() && start < 0; ++e) {
    int pe = sub.edge_to_parent[e];
    // Orientation of the local edge relative to the parent edge.
    bool flipped = sub.to_parent[h.edge(e).u] != g.edge(pe).u;
    for (int r = 0; r < 2 && start < 0; ++r)
      if (outer[2 * pe + r]) start = dart_of(e, (r == 1) != flipped);
  }
  RotationIndex idx(h, out);
  int d = start;
  do {
    out.outer_face.push_back(d);
    d = idx.face_next(d);
  } while (d != start);
  return out;
}

}  // namespace treecover
