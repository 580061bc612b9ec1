#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "treecover/cover.hpp"
#include "treecover/generators.hpp"
#include "treecover/graph.hpp"

namespace treecover::testing {

inline Graph path_graph(int n, double w = 1.0) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, w});
  return Graph(n, e);
}

inline Graph cycle_graph(int n, double w = 1.0) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, w});
  return Graph(n, e);
}

inline Graph star_graph(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i, 1.0});
  return Graph(leaves + 1, e);
}

inline Graph clique(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return Graph(n, e);
}

inline Instance grid(int rows, int cols, double wmax = 1.0, uint64_t seed = 1) {
  GenParams p;
  p.kind = InstanceKind::Grid;
  p.rows = rows;
  p.cols = cols;
  p.wmax = wmax;
  p.seed = seed;
  return generate(p);
}

inline Instance triangulation(int n, uint64_t seed, double wmax = 1.0, double del = 0.0) {
  GenParams p;
  p.kind = InstanceKind::RandomTriangulation;
  p.n = n;
  p.wmax = wmax;
  p.delete_fraction = del;
  p.seed = seed;
  return generate(p);
}

inline Instance series_parallel(int n, uint64_t seed, double wmax = 1.0) {
  GenParams p;
  p.kind = InstanceKind::SeriesParallel;
  p.n = n;
  p.wmax = wmax;
  p.seed = seed;
  return generate(p);
}

// Floyd-Warshall over the edge list, independent of the Dijkstra code.
inline std::vector<std::vector<double>> floyd(const Graph& g) {
  const double inf = std::numeric_limits<double>::infinity();
  int n = g.n();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const Edge& e : g.edges()) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// All node-to-node distances of a rooted tree by walking parent pointers.
inline std::vector<std::vector<double>> tree_distances(const RootedTree& t) {
  int n = t.size();
  std::vector<std::vector<int>> anc(n);
  std::vector<std::vector<double>> up(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0;
    for (int x = i; x >= 0; x = t.parent[x]) {
      anc[i].push_back(x);
      up[i].push_back(acc);
      acc += t.weight[x];
    }
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double best = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < anc[a].size(); ++i)
        for (size_t j = 0; j < anc[b].size(); ++j)
          if (anc[a][i] == anc[b][j]) best = std::min(best, up[a][i] + up[b][j]);
      d[a][b] = best;
    }
  return d;
}

}  // namespace treecover::testing

#include "treecover/planar.hpp"

namespace treecover::testing {

// Embedding from a rotation system, taking the face through dart 0 as outer.
inline Embedding embedding_from_rotation(const Graph& g, std::vector<std::vector<int>> rotation) {
  Embedding emb{std::move(rotation), {}};
  RotationIndex idx(g, emb);
  int d = 0;
  do {
    emb.outer_face.push_back(d);
    d = idx.face_next(d);
  } while (d != 0);
  return emb;
}

// Rotation listing incident edges by edge id, valid for trees.
inline Embedding tree_embedding(const Graph& g) {
  std::vector<std::vector<int>> rot(g.n());
  for (int e = 0; e < g.m(); ++e) {
    rot[g.edge(e).u].push_back(e);
    rot[g.edge(e).v].push_back(e);
  }
  return embedding_from_rotation(g, std::move(rot));
}

inline std::vector<int> all_vertices(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace treecover::testing
