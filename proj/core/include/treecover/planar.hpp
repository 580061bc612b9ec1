#pragma once

#include <vector>

#include "treecover/graph.hpp"

namespace treecover {

// Darts: 2e runs edge(e).u -> edge(e).v, 2e+1 runs the other way.
inline int dart_of(int e, bool reversed) { return 2 * e + (reversed ? 1 : 0); }
inline int dart_edge(int d) { return d >> 1; }
inline int dart_reverse(int d) { return d ^ 1; }
inline int dart_tail(const Graph& g, int d) {
  return (d & 1) ? g.edge(d >> 1).v : g.edge(d >> 1).u;
}
inline int dart_head(const Graph& g, int d) {
  return (d & 1) ? g.edge(d >> 1).u : g.edge(d >> 1).v;
}

// Rotation system: counter-clockwise cyclic order of incident edge ids per
// vertex. The outer face is listed as a closed dart walk.
struct Embedding {
  std::vector<std::vector<int>> rotation;
  std::vector<int> outer_face;
};

// Faces traced with the face on the left of each dart:
// next(u->v) = v->w where w precedes u in the rotation at v.
struct FaceSet {
  std::vector<int> face_of_dart;
  std::vector<std::vector<int>> faces;
  int outer = 0;
};

// Throws NotPlanarEmbedding on malformed rotations, Euler failure, or an outer
// face that is not one of the traced faces.
FaceSet trace_faces(const Graph& g, const Embedding& emb);

// Position lookups into the rotation system.
class RotationIndex {
 public:
  RotationIndex(const Graph& g, const Embedding& emb);
  // Dart leaving v that follows / precedes dart d (tail v) counter-clockwise.
  int next_ccw(int d) const;
  int prev_ccw(int d) const;
  // Successor of dart d along its face.
  int face_next(int d) const { return prev_ccw(dart_reverse(d)); }

 private:
  const Graph* g_;
  const Embedding* emb_;
  std::vector<int> pos_;  // per dart: index in rotation of its tail
};

// Outer-face queries for connected vertex subsets of a fixed drawing.
class OuterFaceOracle {
 public:
  OuterFaceOracle(const Graph& g, const Embedding& emb);
  const Graph& graph() const { return *g_; }
  const FaceSet& faces() const { return faces_; }

  // Per dart of g: 1 if both endpoints are in `mask` and the dart lies on
  // the outer face of the induced subgraph g[mask].
  std::vector<char> outer_darts(const std::vector<char>& mask) const;
  // Vertices of g[mask] that lie on its outer face. A single isolated vertex
  // counts as external.
  std::vector<char> outer_vertices(const std::vector<char>& mask) const;

 private:
  const Graph* g_;
  FaceSet faces_;
};

// Rotation and outer face of an induced subgraph, inherited from the drawing.
Embedding induced_embedding(const OuterFaceOracle& oracle, const Embedding& emb,
                            const Subgraph& sub);

}  // namespace treecover
