#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "treecover/errors.hpp"
#include "treecover/forest_cover.hpp"
#include "treecover/serialize.hpp"
#include "treecover/tree_decomposition.hpp"

using namespace treecover;
using namespace treecover::testing;

TEST(NumberTest, RoundTrip) {
  for (double x : {0.0, 1.0, 0.1, 1.0 / 3.0, 12345.678, 1e-300, 2.5e17}) {
    EXPECT_EQ(parse_double(format_double(x)), x);
  }
  EXPECT_EQ(format_double(3.0), "3");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_THROW(parse_double("1.5x"), InvalidArgument);
  EXPECT_THROW(parse_double(""), InvalidArgument);
}

TEST(GraphTextTest, ParsesHandWritten) {
  GraphFile f = read_graph("c a triangle\np 3 3\ne 0 1 1\n# note\ne 1 2 2.5\ne 0 2 4\nt 0 2\n");
  EXPECT_EQ(f.graph.n(), 3);
  EXPECT_EQ(f.graph.m(), 3);
  EXPECT_FALSE(f.embedding.has_value());
  EXPECT_EQ(f.terminals, (std::vector<int>{0, 2}));
  EXPECT_DOUBLE_EQ(f.graph.edge(1).w, 2.5);
}

TEST(GraphTextTest, RoundTripWithEmbeddingAndTerminals) {
  Instance in = triangulation(40, 2, 5.0, 0.1);
  std::vector<int> terms{1, 5, 9};
  std::string text = write_graph(in.graph, &*in.embedding, &terms);
  GraphFile f = read_graph(text);
  ASSERT_TRUE(f.embedding.has_value());
  EXPECT_EQ(f.embedding->rotation, in.embedding->rotation);
  EXPECT_EQ(f.embedding->outer_face, in.embedding->outer_face);
  EXPECT_EQ(f.terminals, terms);
  EXPECT_EQ(write_graph(f.graph, &*f.embedding, &f.terminals), text);
}

TEST(GraphTextTest, MalformedInputThrows) {
  EXPECT_THROW(read_graph(""), InvalidArgument);
  EXPECT_THROW(read_graph("p 2 1\n"), InvalidArgument);
  EXPECT_THROW(read_graph("p 2 1\ne 0 1\n"), InvalidArgument);
  EXPECT_THROW(read_graph("p 2 1\ne 0 1 x\n"), InvalidArgument);
  EXPECT_THROW(read_graph("p 2 1\ne 0 1 1\nq 3\n"), InvalidArgument);
  EXPECT_THROW(read_graph("p 3 1\ne 0 1 1\n"), InvalidArgument);
  EXPECT_NO_THROW(read_graph("p 3 1\ne 0 1 1\n", false));
  EXPECT_THROW(read_graph("p 2 1\ne 0 1 1\nr 0 0\nr 1 0\n"), InvalidArgument);
  EXPECT_THROW(read_graph("p 2 1\ne 0 1 1\nt 5\n"), InvalidArgument);
  EXPECT_THROW(read_graph("p 2 2\ne 0 1 1\ne 1 0 1\n"), InvalidArgument);
}

TEST(CoverTextTest, RoundTrip) {
  Instance in = grid(8, 8, 3.0, 2);
  double delta = diameter(in.graph, true);
  PlanarCover pc = build_planar_cover(in.graph, *in.embedding, 0.5, 0.125, delta);
  std::string text = write_cover(pc.cover);
  ForestCover back = read_cover(text);
  EXPECT_EQ(write_cover(back), text);
  ASSERT_EQ(back.forests.size(), pc.cover.forests.size());
  EXPECT_EQ(back.additive_bound, pc.cover.additive_bound);
  EXPECT_EQ(back.forests[0][0].weight, pc.cover.forests[0][0].weight);
}

TEST(CoverTextTest, SteinerTreeRoundTrip) {
  ForestCover fc;
  RootedTree t;
  t.kind = TreeKind::SteinerStar;
  t.add_node(-1, -1, 0.0);
  t.add_node(3, 0, 0.25);
  fc.forests = {{t}};
  fc.eps = 0.1;
  std::string text = write_cover(fc);
  EXPECT_EQ(write_cover(read_cover(text)), text);
  EXPECT_EQ(read_cover(text).forests[0][0].kind, TreeKind::SteinerStar);
}

TEST(CoverTextTest, MalformedInputThrows) {
  EXPECT_THROW(read_cover(""), InvalidArgument);
  EXPECT_THROW(read_cover("cover 1 0.5 1 0 0\n"), InvalidArgument);
  EXPECT_THROW(read_cover("cover 1 0.5 1 0 0\nforest 1\ntree spanning 0 2\nv 0 1\np -1 0\nw 0\n"),
               InvalidArgument);
  EXPECT_THROW(read_cover("cover 0 0.5 1 0 0\nforest 0\n"), InvalidArgument);
}

TEST(PartitionTextTest, RoundTrip) {
  Instance in = grid(10, 10, 1.0, 1);
  double delta = diameter(in.graph, true);
  PlanarPartition pp = build_planar_partition(in.graph, *in.embedding, 0.5, 0.125, delta);
  std::string text = write_partition(pp.partition);
  Partition back = read_partition(text);
  EXPECT_EQ(write_partition(back), text);
  ASSERT_EQ(back.size(), pp.partition.size());
  for (int c = 0; c < back.size(); ++c) EXPECT_EQ(back.clusters[c].vertices, pp.partition.clusters[c].vertices);
}

TEST(PartitionTextTest, MalformedInputThrows) {
  EXPECT_THROW(read_partition("partition 2 1 0.5 0.1 4\nc 0 -1 -1 0\na 0 1\n"), InvalidArgument);
  EXPECT_THROW(read_partition("partition 2 1 0.5 0.1 4\nc 0 -1 -1 0\na 0\n"), InvalidArgument);
  EXPECT_THROW(read_partition("partition 2 2 0.5 0.1 4\nc 0 -1 -1 0\na 0 0\n"), InvalidArgument);
}

TEST(HierarchyTextTest, RoundTrip) {
  Instance in = grid(12, 12, 1.0, 1);
  double delta = diameter(in.graph, true);
  PlanarPartition pp = build_planar_partition(in.graph, *in.embedding, 0.5, 0.125, delta);
  std::string text = write_hierarchy(pp.hierarchy);
  GridtreeHierarchy back = read_hierarchy(text);
  EXPECT_EQ(write_hierarchy(back), text);
  EXPECT_EQ(back.nodes.size(), pp.hierarchy.nodes.size());
  EXPECT_THROW(read_hierarchy("{\"width\": 1}"), InvalidArgument);
  EXPECT_THROW(read_hierarchy("not json"), InvalidArgument);
}

TEST(PaceTextTest, RoundTrip) {
  Instance in = series_parallel(60, 3, 2.0);
  TreeDecomposition td = min_fill_decomposition(in.graph);
  std::string text = write_pace(td);
  TreeDecomposition back = read_pace(text);
  EXPECT_EQ(write_pace(back), text);
  EXPECT_EQ(back.bags, td.bags);
  EXPECT_NO_THROW(validate_decomposition(in.graph, back));
}

TEST(FileTest, WriteThenRead) {
  std::string path = ::testing::TempDir() + "treecover_file_test.txt";
  write_file(path, "abc\n");
  EXPECT_EQ(read_file(path), "abc\n");
  EXPECT_THROW(read_file(path + ".missing"), InvalidArgument);
}
