#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "treecover/serialize.hpp"

using treecover::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + "treecover_cli_" + name; }

}  // namespace

TEST(CliTest, GenIsDeterministic) {
  Result a = call({"gen", "random-triangulation", "60", "--seed", "7", "--wmax", "4"});
  Result b = call({"gen", "random-triangulation", "60", "--seed", "7", "--wmax", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  Result c = call({"gen", "random-triangulation", "60", "--seed", "8", "--wmax", "4"});
  EXPECT_NE(a.out, c.out);
}

TEST(CliTest, BuildCoverThenVerify) {
  std::string g = tmp("grid.txt"), cover = tmp("grid.cover"), part = tmp("grid.part"), hier = tmp("grid.json");
  ASSERT_EQ(call({"gen", "grid", "8", "8", "-o", g}).code, 0);
  Result b = call({"build-cover", g, "--eps", "0.5", "--exact-diameter", "-o", cover, "--partition", part,
                   "--hierarchy", hier});
  ASSERT_EQ(b.code, 0) << b.err;
  Result v = call({"verify", g, cover, "--kind", "cover", "--exact-diameter"});
  EXPECT_EQ(v.code, 0) << v.out << v.err;
  Result p = call({"verify", g, part, "--kind", "partition", "--hierarchy", hier, "--exact-diameter"});
  EXPECT_EQ(p.code, 0) << p.out << p.err;
  Result q = call({"query", cover, "5", "5"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_EQ(q.out, "0\n");
  Result q2 = call({"query", cover, "0", "1"});
  ASSERT_EQ(q2.code, 0);
  EXPECT_GE(treecover::parse_double(q2.out.substr(0, q2.out.size() - 1)), 1.0);
}

TEST(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(call({"no-such-command"}).code, 1);
  std::string g = tmp("usage.txt");
  ASSERT_EQ(call({"gen", "grid", "4", "4", "-o", g}).code, 0);
  EXPECT_EQ(call({"build-cover", g, "--eps", "2"}).code, 1);
  EXPECT_EQ(call({"build-cover", tmp("missing.txt")}).code, 1);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(CliTest, FailedVerificationExitsTwo) {
  std::string g = tmp("tri.txt"), cover = tmp("tri.mult");
  ASSERT_EQ(call({"gen", "random-triangulation", "40", "--seed", "3", "--wmax", "3", "-o", g}).code, 0);
  Result b = call({"build-mult", g, "--eps", "0.5", "--builder", "exact", "-o", cover});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(call({"verify", g, cover, "--kind", "cover", "--multiplicative", "1.000001"}).code, 2);
}

TEST(CliTest, ConstructionFailureExitsThree) {
  std::string g = tmp("small.txt");
  ASSERT_EQ(call({"gen", "grid", "4", "4", "-o", g}).code, 0);
  EXPECT_EQ(call({"exact-cover", g, "--max-forests", "1"}).code, 3);
}
