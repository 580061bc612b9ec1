#include <gtest/gtest.h>

#include "support.hpp"
#include "treecover/shortcut_partition.hpp"

using namespace treecover;
using namespace treecover::testing;

namespace {

Partition make_partition(std::vector<int> cluster_of, int count) {
  Partition p;
  p.cluster_of = std::move(cluster_of);
  p.clusters.resize(count);
  rebuild_cluster_vertices(p);
  for (auto& c : p.clusters) c.center = c.vertices.front();
  return p;
}

}  // namespace

TEST(ClusterColumnTest, SpineCentersEveryEpsDelta) {
  Graph g = path_graph(4);
  Column col{-1, 0, {0, 1, 2, 3}, {0, 1, 2, 3}};
  auto clusters = cluster_column(g, col, 0.5, 2.0);
  ASSERT_EQ(clusters.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(clusters[i].center, i);
    EXPECT_EQ(clusters[i].ordinal, i);
  }
}

TEST(ClusterColumnTest, SingleVertex) {
  Graph g = path_graph(2);
  Column col{-1, 0, {1}, {1}};
  auto clusters = cluster_column(g, col, 0.5, 2.0);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].vertices, (std::vector<int>{1}));
}

TEST(ClusterColumnTest, ShortSpineOneCenter) {
  Graph g = path_graph(3);
  Column col{-1, 0, {0, 1, 2}, {0, 1, 2}};
  auto clusters = cluster_column(g, col, 0.5, 6.0);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].center, 0);
}

TEST(ClusterHierarchyTest, PathGivesIntervals) {
  Graph g = path_graph(12);
  Embedding emb = tree_embedding(g);
  double delta = 11;
  PlanarPartition pp = build_planar_partition(g, emb, 0.25, 0.125, delta);
  for (const Cluster& c : pp.partition.clusters)
    EXPECT_EQ(c.vertices.back() - c.vertices.front() + 1, static_cast<int>(c.vertices.size()));
}

TEST(ClusterHierarchyTest, WideParametersCoverAll) {
  Instance in = triangulation(40, 2);
  double delta = diameter(in.graph, true);
  PlanarPartition pp = build_planar_partition(in.graph, *in.embedding, 0.99, 0.125, delta);
  for (int v = 0; v < in.graph.n(); ++v) EXPECT_GE(pp.partition.cluster_of[v], 0);
}

TEST(ClusterHierarchyTest, GridTotality) {
  Instance in = grid(20, 20);
  double delta = diameter(in.graph, true);
  PlanarPartition pp = build_planar_partition(in.graph, *in.embedding, 0.25, 0.125, delta);
  std::vector<int> hits(in.graph.n(), 0);
  for (const Cluster& c : pp.partition.clusters)
    for (int v : c.vertices) ++hits[v];
  for (int v = 0; v < in.graph.n(); ++v) EXPECT_EQ(hits[v], 1) << v;
}

TEST(PathCostTest, Examples) {
  Graph g(6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {0, 3, 1}, {3, 5, 1}});
  Partition two = make_partition({0, 0, 0, 1, 1, 1}, 2);
  ClusterGraph cg2 = build_cluster_graph(g, two.cluster_of, 2);
  EXPECT_EQ(path_cost(two, cg2, {0, 1, 2}), 0);
  EXPECT_EQ(path_cost(two, cg2, {1, 2, 3, 4}), 1);
  // A path through six clusters whose endpoints' clusters have a 2-hop
  // connection among the touched clusters.
  Partition six = make_partition({0, 1, 2, 3, 4, 5}, 6);
  ClusterGraph cg6 = build_cluster_graph(g, six.cluster_of, 6);
  EXPECT_EQ(path_cost(six, cg6, {0, 1, 2, 3, 4, 5}), 2);
}

TEST(VerifyClustersTest, SplitClusterFails) {
  Graph g = path_graph(3);
  Partition p = make_partition({0, 1, 0}, 2);
  PartitionReport r = verify_clusters(g, p, 10.0);
  EXPECT_FALSE(r.connected);
  EXPECT_FALSE(r.ok);
}

TEST(VerifyClustersTest, SingletonsPassDiameter) {
  Graph g = path_graph(5);
  Partition p = make_partition({0, 1, 2, 3, 4}, 5);
  PartitionReport r = verify_clusters(g, p, 0.0);
  EXPECT_TRUE(r.diameter);
}

// Builder output passes connectivity, diameter, spacing and hop checks.
TEST(PartitionProperties, BuilderPassesChecker) {
  for (uint64_t seed = 1; seed <= 6; ++seed)
    for (double eps : {0.5, 0.25}) {
      GenParams p;
      p.kind = static_cast<InstanceKind>(seed % 3);
      p.rows = 8 + seed;
      p.cols = 9;
      p.n = 60 + 10 * seed;
      p.wmax = seed % 2 ? 1 : 5;
      p.delete_fraction = 0.2;
      p.seed = seed;
      Instance in = generate(p);
      double delta = diameter(in.graph, true);
      PlanarPartition pp = build_planar_partition(in.graph, *in.embedding, eps, 0.125, delta);
      PartitionReport r = verify_partition(in.graph, pp.hierarchy, pp.partition, PartitionCheck{});
      EXPECT_TRUE(r.ok) << "seed " << seed << " eps " << eps << ": " << (r.failures.empty() ? "" : r.failures[0]);
      for (const Cluster& c : pp.partition.clusters) {
        EXPECT_GE(c.node, 0);
        EXPECT_GE(c.column, 0);
      }
    }
}
