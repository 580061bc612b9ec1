#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "treecover/errors.hpp"
#include "treecover/forest_cover.hpp"

using namespace treecover;
using namespace treecover::testing;

namespace {

RootedTree path_tree(std::vector<int> vs) {
  RootedTree t;
  for (size_t i = 0; i < vs.size(); ++i) t.add_node(vs[i], static_cast<int>(i) - 1, i == 0 ? 0.0 : 1.0);
  return t;
}

long forest_bound(double eps) {
  long inv = static_cast<long>(std::ceil(1 / eps - 1e-12));
  return (static_cast<long>(std::ceil(8 / eps - 1e-12)) + 1) * 84 * inv * inv;
}

}  // namespace

TEST(CoverGroupingTest, Moduli) {
  CoverGrouping c = cover_grouping(0.5, 0.125, 10.0);
  EXPECT_EQ(c.index_modulus, 28);
  EXPECT_EQ(c.level_modulus, 96);
  EXPECT_DOUBLE_EQ(c.ball_radius, 50.0);
  EXPECT_EQ(cover_grouping(0.3, 0.125, 1.0).index_modulus, 47);
  EXPECT_THROW(cover_grouping(1.5, 0.125, 1.0), InvalidArgument);
  EXPECT_THROW(cover_grouping(0.5, 0.5, 1.0), InvalidArgument);
}

TEST(ValidateTreeTest, RejectsCyclesAndRepeats) {
  RootedTree t = path_tree({0, 1, 2});
  EXPECT_NO_THROW(validate_tree(t, 3));
  RootedTree cyc = t;
  cyc.parent[0] = 2;
  EXPECT_THROW(validate_tree(cyc, 3), InvariantViolation);
  RootedTree rep = path_tree({0, 1, 1});
  EXPECT_THROW(validate_tree(rep, 3), InvariantViolation);
}

TEST(ForestsToTreesTest, HubJoinsRoots) {
  ForestCover fc;
  fc.forests.push_back({path_tree({0, 1}), path_tree({2, 3})});
  fc.forests.push_back({path_tree({0, 1, 2, 3})});
  ForestCover out = forests_to_trees(fc, 5.0);
  ASSERT_EQ(out.forests.size(), 2u);
  ASSERT_EQ(out.forests[0].size(), 1u);
  const RootedTree& merged = out.forests[0][0];
  EXPECT_EQ(merged.vertex[merged.root], -1);
  auto d = tree_distances(merged);
  int n1 = -1, n3 = -1;
  for (int i = 0; i < merged.size(); ++i) {
    if (merged.vertex[i] == 1) n1 = i;
    if (merged.vertex[i] == 3) n3 = i;
  }
  EXPECT_DOUBLE_EQ(d[n1][n3], 12.0);
  EXPECT_EQ(out.forests[1][0].vertex, fc.forests[1][0].vertex);
}

TEST(PlanarCoverTest, TinyGraphOneLayer) {
  Graph g(2, {{0, 1, 1.0}});
  Embedding emb = tree_embedding(g);
  PlanarCover pc = build_planar_cover(g, emb, 0.5, 0.125, 1.0);
  EXPECT_EQ(pc.partition.hierarchy.depth(), 1);
  EXPECT_LE(static_cast<int>(pc.cover.forests.size()), cover_grouping(0.5, 0.125, 1.0).slots());
}

TEST(PlanarCoverTest, WideEpsDepthBound) {
  Instance in = triangulation(40, 5);
  double delta = diameter(in.graph, true);
  PlanarCover pc = build_planar_cover(in.graph, *in.embedding, 0.99, 0.125, delta);
  EXPECT_LE(pc.partition.hierarchy.depth(), static_cast<int>(std::ceil(1 / (0.125 * 0.99))) + 1);
  EXPECT_LE(static_cast<int>(pc.cover.forests.size()),
            cover_grouping(0.99, 0.125, delta).slots() * pc.partition.hierarchy.depth());
}

TEST(PlanarCoverTest, Grid15Additive) {
  Instance in = grid(15, 15);
  ExactOracle o(in.graph);
  double delta = o.diameter();
  PlanarCover pc = build_planar_cover(in.graph, *in.embedding, 0.5, 0.125, delta);
  EXPECT_DOUBLE_EQ(pc.cover.additive_bound, 8 * 0.5 * delta);
  CoverCheck check;
  check.additive_bound = 8 * 0.5 * delta;
  check.check_root_path = true;
  check.diameter_bound = 10 * delta;
  CoverReport r = verify_cover(pc.cover, in.graph, o, check);
  EXPECT_TRUE(r.ok) << r.first_failure;
  EXPECT_TRUE(r.disjoint);
  EXPECT_TRUE(r.spanning);
  EXPECT_LE(r.forests, forest_bound(0.5));
}

TEST(VerifyCoverTest, DetectsUndercut) {
  Graph g = path_graph(3);
  ExactOracle o(g);
  RootedTree t;
  t.add_node(0, -1, 0.0);
  t.add_node(1, 0, 1.0);
  t.add_node(2, 0, 1.0);  // claims d(0,2) = 1
  ForestCover fc;
  fc.forests.push_back({t});
  CoverReport r = verify_cover(fc, g, o, CoverCheck{});
  EXPECT_FALSE(r.dominating);
}

// Additive bound, root paths, disjointness, spanning and diameters over a
// sweep of small weighted instances.
TEST(PlanarCoverProperties, Sweep) {
  for (uint64_t seed = 1; seed <= 6; ++seed)
    for (double eps : {0.5, 0.25}) {
      GenParams p;
      p.kind = static_cast<InstanceKind>(seed % 3);
      p.rows = 6 + seed;
      p.cols = 8;
      p.n = 50 + 10 * seed;
      p.wmax = seed % 2 ? 1 : 6;
      p.delete_fraction = 0.2;
      p.seed = seed;
      Instance in = generate(p);
      ExactOracle o(in.graph);
      double delta = o.diameter();
      PlanarCover pc = build_planar_cover(in.graph, *in.embedding, eps, 0.125, delta);
      CoverCheck check;
      check.additive_bound = 8 * eps * delta;
      check.check_root_path = true;
      check.diameter_bound = 10 * delta;
      CoverReport r = verify_cover(pc.cover, in.graph, o, check);
      EXPECT_TRUE(r.ok) << "seed " << seed << " eps " << eps << ": " << r.first_failure;
      EXPECT_LE(r.forests, forest_bound(eps));
      for (const auto& forest : pc.cover.forests)
        for (const RootedTree& t : forest) {
          EXPECT_EQ(t.kind, TreeKind::Spanning);
          EXPECT_NO_THROW(validate_tree(t, in.graph.n()));
        }
    }
}
