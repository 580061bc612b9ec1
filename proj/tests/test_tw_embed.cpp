#include <gtest/gtest.h>

#include "support.hpp"
#include "treecover/errors.hpp"
#include "treecover/forest_cover.hpp"
#include "treecover/tw_embed.hpp"

using namespace treecover;
using namespace treecover::testing;

namespace {

Partition partition_of(std::vector<int> cluster_of, int k) {
  Partition p;
  p.cluster_of = std::move(cluster_of);
  p.clusters.resize(k);
  rebuild_cluster_vertices(p);
  return p;
}

RootedTree chain(const std::vector<int>& vs) {
  RootedTree t;
  for (size_t i = 0; i < vs.size(); ++i) t.add_node(vs[i], static_cast<int>(i) - 1, i ? 1.0 : 0.0);
  return t;
}

int hop_diameter_of(const Graph& g) {
  int best = 0;
  for (int s = 0; s < g.n(); ++s)
    for (int h : bfs_hops(g, s)) best = std::max(best, h);
  return best;
}

}  // namespace

TEST(ContractTest, SingletonsKeepUnitGrid) {
  Graph g = grid(4, 4).graph;
  Graph gp = contract_to_stars(g, partition_of(all_vertices(16), 16));
  ASSERT_EQ(gp.m(), g.m());
  for (const Edge& e : g.edges()) {
    bool found = false;
    for (const Arc& a : gp.arcs(e.u))
      if (a.to == e.v) {
        found = true;
        EXPECT_DOUBLE_EQ(gp.edge(a.edge).w, 1.0);
      }
    EXPECT_TRUE(found);
  }
}

TEST(ContractTest, SingletonsUseMetricWeights) {
  Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 5.0}});
  Graph gp = contract_to_stars(g, partition_of({0, 1, 2}, 3));
  for (const Edge& e : gp.edges())
    if (std::min(e.u, e.v) == 0 && std::max(e.u, e.v) == 2) EXPECT_DOUBLE_EQ(e.w, 2.0);
}

TEST(ContractTest, OneClusterIsAStar) {
  Graph g = path_graph(5, 2.0);
  Graph gp = contract_to_stars(g, partition_of({0, 0, 0, 0, 0}, 1));
  EXPECT_EQ(gp.m(), 4);
  for (const Edge& e : gp.edges()) {
    EXPECT_EQ(std::min(e.u, e.v), 0);
    EXPECT_DOUBLE_EQ(e.w, 2.0 * std::max(e.u, e.v));
  }
}

TEST(ContractTest, HopDiameterFollowsClusterGraph) {
  Instance in = grid(12, 12, 1.0, 2);
  double delta = diameter(in.graph, true);
  PlanarPartition pp = build_planar_partition(in.graph, *in.embedding, 0.5, 0.125, delta);
  const Partition& p = pp.partition;
  Graph gp = contract_to_stars(in.graph, p);
  ClusterGraph cg = build_cluster_graph(in.graph, p.cluster_of, p.size());
  EXPECT_LE(hop_diameter_of(gp), hop_diameter(cg) + 2);
}

TEST(DecomposeTest, TreeAndCycleWidths) {
  Graph path = path_graph(7);
  TreeDecomposition a = decompose(path);
  EXPECT_EQ(a.width(), 1);
  EXPECT_NO_THROW(validate_decomposition(path, a));
  Graph cyc = cycle_graph(7);
  TreeDecomposition b = decompose(cyc);
  EXPECT_EQ(b.width(), 2);
  EXPECT_NO_THROW(validate_decomposition(cyc, b));
}

TEST(ExtendTest, NoForestsUnchanged) {
  TreeDecomposition td = decompose(path_graph(5));
  TreeDecomposition out = extend_decomposition(td, {});
  EXPECT_EQ(out.bags, td.bags);
  EXPECT_EQ(out.tree_edges, td.tree_edges);
}

TEST(ExtendTest, SingleTreeAddsRootEverywhere) {
  Graph g = path_graph(5);
  TreeDecomposition td = decompose(g);
  ASSERT_EQ(td.width(), 1);
  RootedTree t = chain({2, 1, 0});
  t.add_node(3, 0, 1.0);
  t.add_node(4, 3, 1.0);
  TreeDecomposition out = extend_decomposition(td, {{t}});
  EXPECT_EQ(out.width(), 2);
  for (const auto& bag : out.bags) EXPECT_TRUE(std::binary_search(bag.begin(), bag.end(), 2));
}

TEST(ExtendTest, SharedVertexThrows) {
  TreeDecomposition td = decompose(path_graph(4));
  EXPECT_THROW(extend_decomposition(td, {{chain({0, 1}), chain({1, 2})}}), InvalidArgument);
}

TEST(TranslateTest, KeepsRootAndSpansClusters) {
  Graph g = path_graph(6);
  Partition p = partition_of({0, 0, 1, 1, 2, 2}, 3);
  Graph gp = contract_to_stars(g, p);
  ForestCover fc;
  fc.forests = {{chain({2, 1})}};
  auto out = translate_forests(fc, gp, p);
  ASSERT_EQ(out.size(), 1u);
  ASSERT_EQ(out[0].size(), 1u);
  const RootedTree& t = out[0][0];
  EXPECT_EQ(t.vertex[t.root], 2);
  EXPECT_EQ(t.vertices(), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_NO_THROW(validate_tree(t, 6));
}

TEST(TranslateTest, SharedClusterThrows) {
  Graph g = path_graph(6);
  Partition p = partition_of({0, 0, 1, 1, 2, 2}, 3);
  Graph gp = contract_to_stars(g, p);
  ForestCover fc;
  fc.forests = {{chain({0}), chain({1})}};
  EXPECT_THROW(translate_forests(fc, gp, p), InvalidArgument);
  fc.forests = {{chain({0})}, {chain({1})}};
  EXPECT_NO_THROW(translate_forests(fc, gp, p));
}

TEST(EmbedTest, GridPassesVerification) {
  Instance in = grid(10, 10, 1.0, 1);
  ExactOracle o(in.graph);
  TwEmbedding e = embed(in.graph, *in.embedding, 0.5, o.diameter());
  EmbeddingReport r = verify_embedding(e, in.graph, o);
  EXPECT_TRUE(r.ok) << r.first_failure;
  EXPECT_LE(r.worst_slack, 8 * 0.5 * o.diameter() + 1e-9);
  EXPECT_EQ(e.host.n(), in.graph.n());
}

TEST(EmbedTest, VerifierCatchesShortcut) {
  Instance in = grid(6, 6, 1.0, 1);
  ExactOracle o(in.graph);
  TwEmbedding e = embed(in.graph, *in.embedding, 0.5, o.diameter());
  std::vector<Edge> edges = e.host.edges();
  for (Edge& x : edges) x.w *= 0.5;
  e.host = Graph(e.host.n(), edges);
  EmbeddingReport r = verify_embedding(e, in.graph, o);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.dominating);
}

// Host distances dominate and stay within the cover's additive bound on
// triangulations of several seeds.
TEST(EmbedProperties, TriangulationSweep) {
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    Instance in = triangulation(80 + 30 * seed, seed, 3.0, 0.1);
    ExactOracle o(in.graph);
    TwEmbedding e = embed(in.graph, *in.embedding, 0.5, o.diameter());
    EmbeddingReport r = verify_embedding(e, in.graph, o);
    EXPECT_TRUE(r.ok) << "seed " << seed << ": " << r.first_failure;
  }
}
