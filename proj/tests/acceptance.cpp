#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "treecover/cover.hpp"
#include "treecover/exact_cover.hpp"
#include "treecover/forest_cover.hpp"
#include "treecover/generators.hpp"
#include "treecover/gridtree.hpp"
#include "treecover/mult_reduction.hpp"
#include "treecover/oracle.hpp"
#include "treecover/serialize.hpp"
#include "treecover/shortcut_partition.hpp"
#include "treecover/tw_embed.hpp"
#include "treecover/tw_partition.hpp"

using namespace treecover;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

struct Named {
  std::string name;
  Instance instance;
};

Instance make(InstanceKind kind, int rows, int cols, int n, double wmax, double del, uint64_t seed) {
  GenParams p;
  p.kind = kind;
  p.rows = rows;
  p.cols = cols;
  p.n = n;
  p.wmax = wmax;
  p.delete_fraction = del;
  p.seed = seed;
  return generate(p);
}

std::vector<Named> planar_suite(int grid_side, int tri_n) {
  std::vector<Named> out;
  out.push_back({"grid" + std::to_string(grid_side), make(InstanceKind::Grid, grid_side, grid_side, 0, 5.0, 0.0, 1)});
  out.push_back({"cylinder" + std::to_string(grid_side),
                 make(InstanceKind::CylinderGrid, grid_side, grid_side, 0, 3.0, 0.0, 2)});
  out.push_back({"triangulation" + std::to_string(tri_n),
                 make(InstanceKind::RandomTriangulation, 0, 0, tri_n, 4.0, 0.1, 3)});
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

void criterion_additive_cover(Outcome& o) {
  double worst_ratio = 0.0, worst_time = 0.0;
  int instances = 0;
  for (const Named& in : planar_suite(20, 400)) {
    const Graph& g = in.instance.graph;
    ExactOracle oracle(g);
    double delta = oracle.diameter();
    for (double eps : {0.5, 0.25, 0.1}) {
      auto start = Clock::now();
      PlanarCover pc = build_planar_cover(g, *in.instance.embedding, eps, 0.125, delta);
      double secs = seconds_since(start);
      CoverCheck check;
      check.additive_bound = 8 * eps * delta;
      check.diameter_bound = 10 * delta;
      CoverReport r = verify_cover(pc.cover, g, oracle, check);
      double ce = std::ceil(1 / eps - 1e-12);
      double bound = (std::ceil(8 / eps - 1e-12) + 1) * 84 * ce * ce;
      std::string tag = in.name + " eps " + fmt(eps);
      o.check(r.ok, tag + ": " + r.first_failure);
      o.check(r.dominating && r.within_additive && r.spanning && r.diameters, tag + ": cover property broken");
      o.check(pc.cover.forests.size() <= bound, tag + ": " + std::to_string(pc.cover.forests.size()) +
                                                    " forests exceed " + fmt(bound));
      o.check(secs < 60.0, tag + ": took " + fmt(secs) + " s");
      worst_ratio = std::max(worst_ratio, r.worst_slack / (eps * delta));
      worst_time = std::max(worst_time, secs);
      ++instances;
    }
  }
  o.detail << instances << " runs, worst slack " << fmt(worst_ratio) << " eps*delta (bound 8), slowest "
           << fmt(worst_time) << " s";
}

void criterion_partition(Outcome& o) {
  int max_cost = 0;
  double worst_diam = 0.0;
  int runs = 0;
  for (const Named& in : planar_suite(16, 250)) {
    const Graph& g = in.instance.graph;
    double delta = diameter(g, true);
    for (double eps : {0.5, 0.25}) {
      PlanarPartition pp = build_planar_partition(g, *in.instance.embedding, eps, 0.125, delta);
      PartitionCheck check;
      PartitionReport r = verify_partition(g, pp.hierarchy, pp.partition, check);
      std::string tag = in.name + " eps " + fmt(eps);
      o.check(r.ok, tag + ": " + (r.failures.empty() ? "" : r.failures[0]));
      o.check(r.connected && r.total && r.diameter && r.spacing && r.hops, tag + ": partition property broken");
      max_cost = std::max(max_cost, r.max_cost);
      worst_diam = std::max(worst_diam, r.max_cluster_diameter / (eps * delta));
      ++runs;
    }
  }
  o.detail << runs << " runs, worst diameter " << fmt(worst_diam) << " eps*delta (bound 4), max certified hops "
           << max_cost;
}

void criterion_gridtree(Outcome& o) {
  int runs = 0, max_depth = 0, literal_width_failures = 0, other_failures = 0;
  const InstanceKind kinds[] = {InstanceKind::Grid, InstanceKind::CylinderGrid, InstanceKind::RandomTriangulation};
  for (uint64_t seed = 1; seed <= 51; ++seed) {
    InstanceKind kind = kinds[seed % 3];
    Instance in = make(kind, 6 + seed % 9, 7 + (seed * 5) % 9, 40 + 4 * seed, seed % 2 ? 1.0 : 6.0,
                       (seed % 4) * 0.1, seed);
    double delta = diameter(in.graph, true);
    for (double frac : {0.5, 0.2, 0.125, 1.0 / 32}) {
      double w = frac * delta;
      GridtreeHierarchy h = build_hierarchy(in.graph, *in.embedding, w);
      HierarchyReport r = check_hierarchy(in.graph, h, delta);
      std::string tag = instance_kind_name(kind) + " seed " + std::to_string(seed) + " w " + fmt(frac) + "D";
      o.check(r.ok, tag + ": " + (r.failures.empty() ? "" : r.failures[0]));
      o.check(r.depth_value <= static_cast<int>(std::ceil(delta / w - 1e-12)) + 1, tag + ": depth");
      if (!r.width) ++literal_width_failures;
      if (!r.gridtrees || !r.parent_width || !r.layer_width || !r.depth || !r.nesting) ++other_failures;
      max_depth = std::max(max_depth, r.depth_value);
      ++runs;
    }
  }
  o.detail << runs << " hierarchies over 51 seeds, max depth " << max_depth << ", column width failures "
           << literal_width_failures << ", other failures " << other_failures;
}

std::vector<std::vector<int>> simple_paths(const Graph& g, int max_len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<char> on(g.n(), 0);
  std::function<void(int)> grow = [&](int v) {
    if (cur.size() >= 2) out.push_back(cur);
    if (static_cast<int>(cur.size()) > max_len) return;
    for (const Arc& a : g.arcs(v))
      if (!on[a.to]) {
        on[a.to] = 1;
        cur.push_back(a.to);
        grow(a.to);
        cur.pop_back();
        on[a.to] = 0;
      }
  };
  for (int s = 0; s < g.n(); ++s) {
    on[s] = 1;
    cur = {s};
    grow(s);
    on[s] = 0;
  }
  return out;
}

Graph unit_copy(const Graph& g) {
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.w = 1.0;
  return Graph(g.n(), std::move(edges));
}

void criterion_exact_cover(Outcome& o) {
  std::vector<std::pair<std::string, Graph>> graphs;
  graphs.push_back({"grid3x3", make(InstanceKind::Grid, 3, 3, 0, 1.0, 0.0, 1).graph});
  graphs.push_back({"grid2x4", make(InstanceKind::Grid, 2, 4, 0, 1.0, 0.0, 1).graph});
  graphs.push_back({"cylinder3x4", make(InstanceKind::CylinderGrid, 3, 4, 0, 1.0, 0.0, 1).graph});
  graphs.push_back({"grid2x3", make(InstanceKind::Grid, 2, 3, 0, 1.0, 0.0, 1).graph});
  graphs.push_back({"cylinder2x4", make(InstanceKind::CylinderGrid, 2, 4, 0, 1.0, 0.0, 1).graph});
  graphs.push_back({"cylinder3x3", make(InstanceKind::CylinderGrid, 3, 3, 0, 1.0, 0.0, 1).graph});
  for (uint64_t seed = 1, small = 0; small < 3 && seed < 200; ++seed) {
    int n = 12 + static_cast<int>(seed % 9);
    Graph g = unit_copy(make(InstanceKind::RandomTriangulation, 0, 0, n, 1.0, 0.2, seed).graph);
    if (diameter(g, true) <= 3) {
      graphs.push_back({"triangulation" + std::to_string(n) + "s" + std::to_string(seed), g});
      ++small;
    }
  }
  int found = 0;
  for (uint64_t seed = 1; found < 4 && seed < 200; ++seed) {
    int n = 20 + static_cast<int>(seed % 4) * 10;
    Graph g = unit_copy(make(InstanceKind::RandomTriangulation, 0, 0, n, 1.0, 0.0, seed).graph);
    if (diameter(g, true) <= 4) {
      graphs.push_back({"triangulation" + std::to_string(n) + "s" + std::to_string(seed), g});
      ++found;
    }
  }
  int covers = 0, max_forests = 0;
  for (auto& [name, g] : graphs) {
    ExactOracle oracle(g);
    int delta = static_cast<int>(oracle.diameter());
    if (delta > 4 || g.n() > 50) continue;
    ForestCover fc = exact_cover(g, delta);
    CoverCheck check;
    check.additive_bound = 0.0;
    CoverReport r = verify_cover(fc, g, oracle, check);
    o.check(r.ok && r.spanning, name + ": " + r.first_failure);
    for (const auto& forest : fc.forests)
      for (const RootedTree& t : forest)
        for (int i = 0; i < t.size(); ++i)
          if (t.parent[i] >= 0) {
            int e = g.find_edge(t.vertex[i], t.vertex[t.parent[i]]);
            o.check(e >= 0, name + ": tree edge missing from the graph");
          }
    max_forests = std::max(max_forests, static_cast<int>(fc.forests.size()));
    ++covers;
  }
  long contracts = 0;
  for (auto& [name, g] : graphs) {
    int delta = static_cast<int>(diameter(g, true));
    if (g.n() > 20 || delta > 3) continue;
    auto paths = simple_paths(g, delta);
    std::vector<BfsForest> pool = star_forest_base(g);
    std::vector<BfsForest> frontier = pool;
    for (int round = 1; round < delta; ++round) {
      std::vector<BfsForest> next;
      for (const auto& f : frontier)
        for (auto& x : root_expansion(g, f)) next.push_back(std::move(x));
      pool.insert(pool.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    for (const BfsForest& f : pool) {
      auto exp = root_expansion(g, f);
      for (const auto& path : paths) {
        if (static_cast<int>(path.size()) - 1 > delta) continue;
        std::vector<int> prefix(path.begin(), path.end() - 1);
        if (!preserves({f}, prefix)) continue;
        ++contracts;
        o.check(preserves(exp, path), name + ": expansion misses a path");
      }
    }
  }
  o.check(covers >= 5, "too few exact-cover instances: " + std::to_string(covers));
  o.check(contracts > 0, "no root-expansion contract instances");
  o.detail << covers << " exact covers (max " << max_forests << " forests), " << contracts
           << " root-expansion contract checks";
}

struct MultRun {
  std::string name;
  Graph graph;
  MultCover cover;
};

std::vector<MultRun> criterion_mult(Outcome& o) {
  std::vector<MultRun> runs;
  std::vector<Named> suite;
  suite.push_back({"grid12", make(InstanceKind::Grid, 12, 12, 0, 4.0, 0.0, 4)});
  suite.push_back({"cylinder10", make(InstanceKind::CylinderGrid, 10, 14, 0, 2.0, 0.0, 5)});
  suite.push_back({"triangulation200", make(InstanceKind::RandomTriangulation, 0, 0, 200, 5.0, 0.1, 6)});
  double worst_c = 0.0;
  for (const Named& in : suite) {
    const Graph& g = in.instance.graph;
    ExactOracle oracle(g);
    for (double eps : {0.5, 0.25}) {
      MultCover m = multiplicative_cover(g, eps, planar_additive_builder(g, *in.instance.embedding));
      CoverCheck check;
      check.multiplicative_bound = 1 + m.c * eps;
      check.check_disjoint = false;
      CoverReport r = verify_cover(m.cover, g, oracle, check);
      std::string tag = in.name + " eps " + fmt(eps) + " c " + fmt(m.c);
      o.check(r.ok, tag + ": " + r.first_failure);
      o.check(r.dominating && r.within_multiplicative, tag + ": bound broken");
      for (const auto& forest : m.cover.forests) {
        o.check(forest.size() == 1, tag + ": forest is not one tree");
        for (const RootedTree& t : forest) {
          try {
            validate_tree(t, g.n());
          } catch (const std::exception& e) {
            o.check(false, tag + ": " + e.what());
          }
        }
      }
      std::printf("  mult %s: c = %s, rho = %s, trees = %d, worst ratio = %s\n", in.name.c_str(), fmt(m.c).c_str(),
                  fmt(m.rho).c_str(), m.cover.tree_count(), fmt(r.worst_ratio).c_str());
      worst_c = std::max(worst_c, m.c);
      runs.push_back({in.name + " eps " + fmt(eps), g, std::move(m)});
    }
  }
  o.detail << runs.size() << " runs, largest printed c " << fmt(worst_c);
  return runs;
}

void criterion_tw_partition(Outcome& o) {
  int runs = 0, width = 0;
  double worst_diam = 0.0;
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    int n = 75 * static_cast<int>(seed);
    Instance in = make(InstanceKind::SeriesParallel, 0, 0, n, seed % 2 ? 1.0 : 5.0, 0.0, seed);
    const TreeDecomposition& td = *in.decomposition;
    double delta = diameter(in.graph, true);
    for (double eps : {0.5, 0.25}) {
      TwClustering c = tw_cluster(in.graph, td, eps, delta);
      TwPartitionCheck check;
      PartitionReport r = verify_tw_partition(in.graph, c, check);
      std::string tag = "series-parallel n " + std::to_string(n) + " eps " + fmt(eps);
      o.check(td.width() <= 2, tag + ": width " + std::to_string(td.width()));
      o.check(r.ok, tag + ": " + (r.failures.empty() ? "" : r.failures[0]));
      o.check(r.diameter && r.hops, tag + ": partition property broken");
      double j = hop_recurrence(c.width, eps, c.width + 1);
      o.check(r.max_cost <= j, tag + ": hops " + std::to_string(r.max_cost) + " exceed " + fmt(j));
      worst_diam = std::max(worst_diam, r.max_cluster_diameter / (eps * delta));
      width = std::max(width, c.width);
      ++runs;
    }
  }
  o.detail << runs << " runs, width " << width << ", worst diameter " << fmt(worst_diam) << " eps*delta (bound 2)";
}

void criterion_embedding(Outcome& o) {
  int runs = 0;
  double worst = 0.0;
  int widest = 0;
  for (const Named& in : planar_suite(14, 300)) {
    const Graph& g = in.instance.graph;
    ExactOracle oracle(g);
    for (double eps : {0.5, 0.25}) {
      TwEmbedding e = embed(g, *in.instance.embedding, eps, oracle.diameter());
      EmbeddingReport r = verify_embedding(e, g, oracle);
      std::string tag = in.name + " eps " + fmt(eps);
      o.check(r.ok, tag + ": " + r.first_failure);
      o.check(r.valid_decomposition && r.dominating && r.within_additive && r.width_bound, tag + ": broken");
      o.check(e.additive_bound <= 8 * eps * oracle.diameter() + 1e-9, tag + ": additive bound above 8 eps delta");
      worst = std::max(worst, r.worst_slack / (eps * oracle.diameter()));
      widest = std::max(widest, e.width);
      ++runs;
    }
  }
  o.detail << runs << " runs, worst slack " << fmt(worst) << " eps*delta (bound 8), widest decomposition "
           << widest;
}

void criterion_oracle(Outcome& o, const std::vector<MultRun>& mult) {
  long queries = 0;
  int max_lookups = 0;
  double worst = 1.0;
  for (const MultRun& run : mult) {
    const Graph& g = run.graph;
    int n = g.n();
    ExactOracle exact(g);
    const ForestCover& cover = run.cover.cover;
    CoverOracle oracle(cover, n);
    std::vector<const RootedTree*> trees;
    for (const auto& forest : cover.forests)
      for (const RootedTree& t : forest) trees.push_back(&t);
    std::vector<std::vector<int>> node(trees.size(), std::vector<int>(n, -1));
    std::vector<LcaIndex> lca;
    for (size_t i = 0; i < trees.size(); ++i) {
      for (int x = 0; x < trees[i]->size(); ++x)
        if (trees[i]->vertex[x] >= 0) node[i][trees[i]->vertex[x]] = x;
      lca.emplace_back(*trees[i]);
    }
    double bound = 1 + run.cover.c * run.cover.eps;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        QueryResult q = oracle.query(u, v);
        double best = kInf;
        for (size_t i = 0; i < trees.size(); ++i)
          if (node[i][u] >= 0 && node[i][v] >= 0) best = std::min(best, lca[i].distance(node[i][u], node[i][v]));
        double d = exact(u, v);
        o.check(std::abs(q.distance - best) <= 1e-9 * std::max(1.0, d), run.name + ": oracle differs from trees");
        o.check(q.distance >= d - 1e-9 && q.distance <= bound * d + 1e-9, run.name + ": oracle outside bound");
        o.check(q.lca_lookups <= oracle.tree_count(), run.name + ": too many LCA lookups");
        max_lookups = std::max(max_lookups, q.lca_lookups);
        worst = std::max(worst, q.distance / d);
        ++queries;
      }
    for (int s : {2, 5, 12}) {
      std::vector<int> terminals;
      for (int i = 0; i < s; ++i) terminals.push_back((i * 37 + 11) % n);
      std::sort(terminals.begin(), terminals.end());
      terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
      int k = static_cast<int>(terminals.size());
      Emulator em = build_emulator(cover, terminals, n);
      o.check(em.graph.n() <= (2 * k - 1) * cover.tree_count(), run.name + ": emulator too large");
      std::vector<char> is_terminal(n, 0);
      for (int t : terminals) is_terminal[t] = 1;
      for (size_t i = 0; i < trees.size(); ++i) {
        RootedTree pruned = prune_tree(*trees[i], is_terminal);
        LcaIndex pl(pruned);
        std::vector<int> pnode(n, -1);
        for (int x = 0; x < pruned.size(); ++x)
          if (pruned.vertex[x] >= 0) pnode[pruned.vertex[x]] = x;
        for (int a : terminals)
          for (int b : terminals) {
            if (node[i][a] < 0 || node[i][b] < 0) continue;
            double want = lca[i].distance(node[i][a], node[i][b]);
            o.check(pnode[a] >= 0 && pnode[b] >= 0 && std::abs(pl.distance(pnode[a], pnode[b]) - want) <= 1e-9 * std::max(1.0, want),
                    run.name + ": pruned tree changes a terminal distance");
          }
      }
      for (int a = 0; a < k; ++a) {
        ShortestPathTree sp = dijkstra(em.graph, a);
        for (int b = 0; b < k; ++b) {
          double d = exact(terminals[a], terminals[b]);
          double best_tree = oracle.query(terminals[a], terminals[b]).distance;
          o.check(sp.dist[b] >= d - 1e-9 * std::max(1.0, d) && sp.dist[b] <= best_tree + 1e-9 * std::max(1.0, d),
                  run.name + ": emulator distance outside [graph, best tree]");
        }
      }
    }
  }
  o.detail << queries << " queries, worst ratio " << fmt(worst) << ", max LCA lookups " << max_lookups;
}

void criterion_determinism(Outcome& o) {
  Instance tri = make(InstanceKind::RandomTriangulation, 0, 0, 150, 4.0, 0.1, 9);
  Instance sp = make(InstanceKind::SeriesParallel, 0, 0, 120, 3.0, 0.0, 9);
  const Graph& g = tri.graph;
  const Embedding& emb = *tri.embedding;
  double delta = diameter(g, true);
  Graph unit = unit_copy(make(InstanceKind::Grid, 3, 4, 0, 1.0, 0.0, 1).graph);
  std::vector<std::pair<std::string, std::function<std::string(int)>>> builders = {
      {"generator", [](int) { return write_graph(make(InstanceKind::RandomTriangulation, 0, 0, 150, 4.0, 0.1, 9).graph); }},
      {"hierarchy", [&](int) { return write_hierarchy(build_hierarchy(g, emb, delta / 16)); }},
      {"partition",
       [&](int) {
         PlanarPartition pp = build_planar_partition(g, emb, 0.25, 0.125, delta);
         return write_partition(pp.partition) + write_hierarchy(pp.hierarchy);
       }},
      {"planar cover", [&](int th) { return write_cover(build_planar_cover(g, emb, 0.25, 0.125, delta, th).cover); }},
      {"exact cover",
       [&](int th) {
         ExactCoverOptions opt;
         opt.threads = th;
         return write_cover(exact_cover(unit, static_cast<int>(diameter(unit, true)), opt));
       }},
      {"multiplicative cover",
       [&](int th) {
         MultOptions opt;
         opt.threads = th;
         return write_cover(multiplicative_cover(g, 0.5, planar_additive_builder(g, emb, 0.125, th), opt).cover);
       }},
      {"tw partition",
       [&](int) {
         return write_partition(tw_cluster(sp.graph, *sp.decomposition, 0.25, diameter(sp.graph, true)).partition);
       }},
      {"embedding",
       [&](int th) {
         TwEmbedding e = embed(g, emb, 0.5, delta, 0.125, th);
         return write_graph(e.host) + write_pace(e.decomposition);
       }},
      {"emulator",
       [&](int th) {
         ForestCover fc = build_planar_cover(g, emb, 0.5, 0.125, delta, th).cover;
         return write_graph(build_emulator(fc, {1, 20, 40, 77, 120}, g.n()).graph, nullptr, nullptr);
       }},
  };
  for (auto& [name, build] : builders) {
    std::string a = build(1), b = build(1), c = build(4);
    o.check(!a.empty() && a == b, name + ": differs between runs");
    o.check(a == c, name + ": differs between 1 and 4 threads");
  }
  o.detail << builders.size() << " builders compared across repeated runs and thread counts";
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* title, const std::function<void(Outcome&)>& fn) {
    Outcome o;
    auto start = Clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %d %s: %s (%s; %.1f s)\n", id, title, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(),
                seconds_since(start));
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  };
  std::vector<MultRun> mult;
  report(1, "additive planar cover", criterion_additive_cover);
  report(2, "shortcut partition", criterion_partition);
  report(3, "gridtree invariants", criterion_gridtree);
  report(4, "exact spanning cover", criterion_exact_cover);
  report(5, "multiplicative cover", [&](Outcome& o) { mult = criterion_mult(o); });
  report(6, "treewidth partition", criterion_tw_partition);
  report(7, "low-treewidth embedding", criterion_embedding);
  report(8, "oracle and emulator", [&](Outcome& o) {
    o.check(!mult.empty(), "no multiplicative covers to query");
    criterion_oracle(o, mult);
  });
  report(9, "determinism", criterion_determinism);
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
