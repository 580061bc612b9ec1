#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "treecover/errors.hpp"
#include "treecover/exact_cover.hpp"
#include "treecover/forest_cover.hpp"
#include "treecover/generators.hpp"
#include "treecover/mult_reduction.hpp"
#include "treecover/oracle.hpp"
#include "treecover/serialize.hpp"
#include "treecover/tw_embed.hpp"
#include "treecover/tw_partition.hpp"

namespace treecover::cli {

namespace {

struct Common {
  double eps = 0.5;
  double t = 0.125;
  uint64_t seed = 1;
  int threads = 1;
  bool exact_diameter = false;
  int max_pairs = 1500;
  std::string output;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--eps", c.eps, "Distortion parameter in (0, 1)");
  app->add_option("--t", c.t, "Gridtree width factor in (0, 1/8]");
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_flag("--exact-diameter", c.exact_diameter, "Use the exact diameter instead of a double sweep bound");
  app->add_option("--max-pairs", c.max_pairs, "Exhaustive pair checks up to this many vertices, sampled beyond");
  app->add_option("-o,--output", c.output, "Output path (stdout when absent)");
}

void check_ranges(const Common& c) {
  if (!(c.eps > 0 && c.eps < 1)) throw InvalidArgument("--eps must lie in (0, 1)");
  if (!(c.t > 0 && c.t <= 0.125)) throw InvalidArgument("--t must lie in (0, 1/8]");
}

// Exact diameter, or twice the double-sweep eccentricity, which never
// undercuts the diameter.
double diameter_bound(const Graph& g, const Common& c) {
  return c.exact_diameter ? diameter(g, true, c.threads) : 2 * diameter(g, false, c.threads);
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) out << text;
  else write_file(c.output, text);
}

GraphFile load_graph(const std::string& path) { return read_graph(read_file(path)); }

const Embedding& need_embedding(const GraphFile& f) {
  if (!f.embedding) throw InvalidArgument("graph file carries no rotation system");
  return *f.embedding;
}

int cover_vertex_count(const ForestCover& fc) {
  int n = 0;
  for (const auto& forest : fc.forests)
    for (const RootedTree& t : forest)
      for (int v : t.vertex) n = std::max(n, v + 1);
  return n;
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

// Metadata carried as PACE comment lines: "c key value".
std::string meta_line(const std::string& key, double value) { return "c " + key + " " + format_double(value) + "\n"; }

double meta_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string c, k, v;
    if (ls >> c >> k >> v && c == "c" && k == key) return parse_double(v);
  }
  throw InvalidArgument("decomposition lacks '" + key + "' metadata");
}

long forest_count_bound(double eps) {
  long inv = static_cast<long>(std::ceil(1 / eps - 1e-12));
  return (static_cast<long>(std::ceil(8 / eps - 1e-12)) + 1) * 84 * inv * inv;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree covers for planar and bounded-treewidth graphs"};
  app.require_subcommand(1);
  std::function<int()> action;

  // gen
  Common gc;
  std::string gen_kind, td_out;
  std::vector<int> gen_size;
  double wmin = 1.0, wmax = 1.0, del = 0.0;
  auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
  add_common(gen, gc);
  gen->add_option("kind", gen_kind, "grid, cylinder-grid, random-triangulation or series-parallel")->required();
  gen->add_option("size", gen_size, "rows cols for grids, n otherwise")->required()->expected(1, 2);
  gen->add_option("--wmin", wmin, "Smallest edge weight");
  gen->add_option("--wmax", wmax, "Largest edge weight");
  gen->add_option("--delete", del, "Fraction of removable edges dropped");
  gen->add_option("--td", td_out, "Write the generated decomposition here");
  gen->callback([&] {
    action = [&] {
      GenParams p;
      p.kind = parse_instance_kind(gen_kind);
      p.seed = gc.seed;
      p.wmin = wmin;
      p.wmax = wmax;
      p.delete_fraction = del;
      if (p.kind == InstanceKind::Grid || p.kind == InstanceKind::CylinderGrid) {
        if (gen_size.size() != 2) throw InvalidArgument("grids need rows and cols");
        p.rows = gen_size[0];
        p.cols = gen_size[1];
      } else {
        if (gen_size.size() != 1) throw InvalidArgument(gen_kind + " needs one size");
        p.n = gen_size[0];
      }
      Instance in = generate(p);
      emit(gc, write_graph(in.graph, in.embedding ? &*in.embedding : nullptr), out);
      if (!td_out.empty()) {
        if (!in.decomposition) throw InvalidArgument("this kind carries no decomposition");
        write_file(td_out, write_pace(*in.decomposition));
      }
      return kOk;
    };
  });

  // build-cover
  Common bc;
  std::string bc_graph, bc_partition, bc_hierarchy;
  auto* build = app.add_subcommand("build-cover", "Additive forest cover of a planar graph");
  add_common(build, bc);
  build->add_option("graph", bc_graph)->required();
  build->add_option("--partition", bc_partition, "Also write the shortcut partition");
  build->add_option("--hierarchy", bc_hierarchy, "Also write the gridtree hierarchy");
  build->callback([&] {
    action = [&] {
      check_ranges(bc);
      GraphFile f = load_graph(bc_graph);
      double delta = diameter_bound(f.graph, bc);
      PlanarCover pc = build_planar_cover(f.graph, need_embedding(f), bc.eps, bc.t, delta, bc.threads);
      emit(bc, write_cover(pc.cover), out);
      if (!bc_partition.empty()) write_file(bc_partition, write_partition(pc.partition.partition));
      if (!bc_hierarchy.empty()) write_file(bc_hierarchy, write_hierarchy(pc.partition.hierarchy));
      err << "forests=" << pc.cover.forests.size() << " trees=" << pc.cover.tree_count()
          << " additive_bound=" << format_double(pc.cover.additive_bound) << "\n";
      return kOk;
    };
  });

  // exact-cover
  Common ec;
  std::string ec_graph, ec_partition;
  int max_len = -1, max_forests = 200000;
  auto* exact = app.add_subcommand("exact-cover", "Exact spanning cover of an unweighted graph");
  add_common(exact, ec);
  exact->add_option("graph", ec_graph)->required();
  exact->add_option("--max-len", max_len, "Longest preserved path in edges (default: hop diameter)");
  exact->add_option("--max-forests", max_forests, "Give up beyond this many forests");
  exact->add_option("--from-partition", ec_partition, "Cover through this partition's cluster graph");
  exact->callback([&] {
    action = [&] {
      GraphFile f = load_graph(ec_graph);
      ExactCoverOptions opt{max_forests, ec.threads};
      ForestCover fc;
      if (!ec_partition.empty()) {
        Partition p = read_partition(read_file(ec_partition));
        PartitionCover pc = partition_to_cover(f.graph, p, max_len, opt);
        err << "hops=" << pc.hops << " cluster_forests=" << pc.cluster_forests << "\n";
        fc = std::move(pc.cover);
      } else {
        int len = max_len;
        if (len < 0)
          for (int v = 0; v < f.graph.n(); ++v) {
            auto h = bfs_hops(f.graph, v);
            len = std::max(len, *std::max_element(h.begin(), h.end()));
          }
        fc = exact_cover(f.graph, len, opt);
      }
      emit(ec, write_cover(fc), out);
      err << "forests=" << fc.forests.size() << " trees=" << fc.tree_count() << "\n";
      return kOk;
    };
  });

  // build-mult
  Common mc;
  std::string mc_graph, builder_name = "planar";
  HpfOptions hpf;
  auto* mult = app.add_subcommand("build-mult", "Multiplicative tree cover");
  add_common(mult, mc);
  mult->add_option("graph", mc_graph)->required();
  mult->add_option("--builder", builder_name, "Additive builder: planar or exact");
  mult->add_option("--mu", hpf.mu, "Scale ratio of the hierarchies");
  mult->add_option("--rho", hpf.rho, "Padding ratio");
  mult->add_option("--max-hierarchies", hpf.max_hierarchies, "Hierarchy budget");
  mult->callback([&] {
    action = [&] {
      check_ranges(mc);
      GraphFile f = load_graph(mc_graph);
      AdditiveBuilder b;
      if (builder_name == "planar") b = planar_additive_builder(f.graph, need_embedding(f), mc.t, mc.threads);
      else if (builder_name == "exact") b = exact_additive_builder(f.graph);
      else throw InvalidArgument("unknown builder " + builder_name);
      MultOptions opt;
      opt.hpf = hpf;
      opt.hpf.seed = mc.seed;
      opt.threads = mc.threads;
      MultCover m = multiplicative_cover(f.graph, mc.eps, b, opt);
      emit(mc, write_cover(m.cover), out);
      err << "trees=" << m.cover.tree_count() << " hierarchies=" << m.hppf.hierarchies.size()
          << " rho=" << format_double(m.rho) << " c=" << format_double(m.c) << " c0=" << format_double(m.c0)
          << " a=" << format_double(m.a) << "\n";
      return kOk;
    };
  });

  // embed-tw
  Common tc;
  std::string tc_graph, tc_td;
  auto* emb = app.add_subcommand("embed-tw", "Low-treewidth embedding with additive distortion");
  add_common(emb, tc);
  emb->add_option("graph", tc_graph)->required();
  emb->add_option("--td", tc_td, "Write the extended decomposition here")->required();
  emb->callback([&] {
    action = [&] {
      check_ranges(tc);
      GraphFile f = load_graph(tc_graph);
      double delta = diameter_bound(f.graph, tc);
      TwEmbedding e = embed(f.graph, need_embedding(f), tc.eps, delta, tc.t, tc.threads);
      emit(tc, write_graph(e.host), out);
      write_file(tc_td, meta_line("additive_bound", e.additive_bound) + meta_line("forests", e.forests) +
                            meta_line("contracted_width", e.contracted_width) + write_pace(e.decomposition));
      err << "width=" << e.width << " contracted_width=" << e.contracted_width << " forests=" << e.forests
          << " additive_bound=" << format_double(e.additive_bound) << "\n";
      return kOk;
    };
  });

  // tw-partition
  Common pc;
  std::string pc_graph, pc_td;
  auto* twp = app.add_subcommand("tw-partition", "Shortcut partition from a tree decomposition");
  add_common(twp, pc);
  twp->add_option("graph", pc_graph)->required();
  twp->add_option("td", pc_td, "PACE decomposition (min-fill when absent)");
  twp->callback([&] {
    action = [&] {
      check_ranges(pc);
      GraphFile f = load_graph(pc_graph);
      TreeDecomposition td = pc_td.empty() ? min_fill_decomposition(f.graph) : read_pace(read_file(pc_td));
      double delta = diameter_bound(f.graph, pc);
      TwClustering c = tw_cluster(f.graph, td, pc.eps, delta);
      emit(pc, write_partition(c.partition), out);
      err << "clusters=" << c.partition.size() << " width=" << c.width << "\n";
      return kOk;
    };
  });

  // oracle
  Common oc;
  std::string oc_cover, oc_graph;
  auto* orc = app.add_subcommand("oracle", "Build the distance oracle and report its size");
  add_common(orc, oc);
  orc->add_option("cover", oc_cover)->required();
  orc->add_option("--graph", oc_graph, "Cross-check every pair against this graph");
  orc->callback([&] {
    action = [&] {
      ForestCover fc = read_cover(read_file(oc_cover));
      int n = cover_vertex_count(fc);
      CoverOracle o(fc, n);
      std::ostringstream s;
      s << "vertices=" << n << " trees=" << o.tree_count() << " space=" << o.space() << "\n";
      if (!oc_graph.empty()) {
        GraphFile f = load_graph(oc_graph);
        ExactOracle ex(f.graph, oc.threads);
        double ratio = 1.0;
        int lookups = 0;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v) {
            QueryResult q = o.query(u, v);
            lookups = std::max(lookups, q.lca_lookups);
            if (ex(u, v) > 0) ratio = std::max(ratio, q.distance / ex(u, v));
          }
        s << "worst_ratio=" << format_double(ratio) << " max_lca_lookups=" << lookups << "\n";
      }
      emit(oc, s.str(), out);
      return kOk;
    };
  });

  // query
  Common qc;
  std::string qc_cover, qc_pairs;
  std::vector<int> qc_uv;
  auto* query = app.add_subcommand("query", "Answer distance queries from a cover");
  add_common(query, qc);
  query->add_option("cover", qc_cover)->required();
  query->add_option("uv", qc_uv, "Query pair")->expected(0, 2);
  query->add_option("--pairs", qc_pairs, "File with one 'u v' pair per line");
  query->callback([&] {
    action = [&] {
      ForestCover fc = read_cover(read_file(qc_cover));
      int n = cover_vertex_count(fc);
      CoverOracle o(fc, n);
      std::vector<std::pair<int, int>> pairs;
      if (qc_uv.size() == 2) pairs.push_back({qc_uv[0], qc_uv[1]});
      else if (!qc_uv.empty()) throw InvalidArgument("query needs two vertices");
      if (!qc_pairs.empty()) {
        std::istringstream in(read_file(qc_pairs));
        int u, v;
        while (in >> u >> v) pairs.push_back({u, v});
      }
      if (pairs.empty()) throw InvalidArgument("no query pairs given");
      std::ostringstream s;
      for (auto [u, v] : pairs) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidArgument("query vertex out of range");
        s << format_double(o.query(u, v).distance) << "\n";
      }
      emit(qc, s.str(), out);
      return kOk;
    };
  });

  // emulator
  Common uc;
  std::string uc_cover, uc_terminals;
  auto* emu = app.add_subcommand("emulator", "Prune a cover to a terminal set");
  add_common(emu, uc);
  emu->add_option("cover", uc_cover)->required();
  emu->add_option("--terminals", uc_terminals, "Comma separated terminals (default: all vertices)");
  emu->callback([&] {
    action = [&] {
      ForestCover fc = read_cover(read_file(uc_cover));
      int n = cover_vertex_count(fc);
      std::vector<int> terminals = parse_list(uc_terminals);
      if (uc_terminals.empty())
        for (int v = 0; v < n; ++v) terminals.push_back(v);
      Emulator e = build_emulator(fc, terminals, n);
      emit(uc, write_graph(e.graph, nullptr, &e.terminals), out);
      err << "vertices=" << e.graph.n() << " edges=" << e.graph.m() << "\n";
      return kOk;
    };
  });

  // verify
  Common vc;
  std::string vc_graph, vc_artifact, vc_kind = "cover", vc_td, vc_hierarchy;
  double vc_add = -1, vc_mult = -1, vc_factor = -1;
  auto* ver = app.add_subcommand("verify", "Check an artifact against its guarantees");
  add_common(ver, vc);
  ver->add_option("graph", vc_graph)->required();
  ver->add_option("artifact", vc_artifact)->required();
  ver->add_option("--kind", vc_kind, "cover, partition, tw-partition, td or embedding");
  ver->add_option("--additive", vc_add, "Additive bound (default: the cover's own)");
  ver->add_option("--multiplicative", vc_mult, "Multiplicative bound");
  ver->add_option("--diameter-factor", vc_factor, "Cluster diameter bound in units of eps * delta");
  ver->add_option("--td", vc_td, "Decomposition of an embedding host");
  ver->add_option("--hierarchy", vc_hierarchy, "Gridtree hierarchy for spacing and hop checks");
  ver->callback([&] {
    action = [&] {
      GraphFile f = load_graph(vc_graph);
      std::ostringstream s;
      bool ok = true;
      if (vc_kind == "cover") {
        ForestCover fc = read_cover(read_file(vc_artifact));
        ExactOracle ex(f.graph, vc.threads);
        CoverCheck check;
        check.threads = vc.threads;
        if (vc_mult > 0) check.multiplicative_bound = vc_mult;
        if (vc_add >= 0) check.additive_bound = vc_add;
        else if (vc_mult <= 0) check.additive_bound = fc.additive_bound;
        CoverReport r = verify_cover(fc, f.graph, ex, check);
        ok = r.ok;
        s << "forests=" << r.forests << " trees=" << r.trees << " worst_slack=" << format_double(r.worst_slack)
          << " worst_ratio=" << format_double(r.worst_ratio) << "\n";
        if (!r.ok) s << "failure: " << r.first_failure << "\n";
      } else if (vc_kind == "partition" || vc_kind == "tw-partition") {
        Partition p = read_partition(read_file(vc_artifact));
        double factor = vc_factor > 0 ? vc_factor : (vc_kind == "partition" ? 4.0 : 2.0);
        PartitionReport r;
        if (!vc_hierarchy.empty()) {
          GridtreeHierarchy h = read_hierarchy(read_file(vc_hierarchy));
          PartitionCheck check;
          check.diameter_factor = factor;
          check.exact_pairs_cap = vc.max_pairs;
          check.seed = vc.seed;
          check.threads = vc.threads;
          r = verify_partition(f.graph, h, p, check);
        } else {
          r = verify_clusters(f.graph, p, factor * p.eps * p.delta, vc.threads);
        }
        ok = r.ok;
        s << "clusters=" << r.clusters << " max_cluster_diameter=" << format_double(r.max_cluster_diameter)
          << " max_cost=" << r.max_cost << "\n";
        for (const auto& msg : r.failures) s << "failure: " << msg << "\n";
      } else if (vc_kind == "td") {
        validate_decomposition(f.graph, read_pace(read_file(vc_artifact)));
        s << "valid\n";
      } else if (vc_kind == "embedding") {
        if (vc_td.empty()) throw InvalidArgument("--td is required for embeddings");
        std::string td_text = read_file(vc_td);
        TwEmbedding e;
        e.host = read_graph(read_file(vc_artifact)).graph;
        e.decomposition = read_pace(td_text);
        e.width = e.decomposition.width();
        e.additive_bound = vc_add >= 0 ? vc_add : meta_value(td_text, "additive_bound");
        e.forests = static_cast<int>(meta_value(td_text, "forests"));
        e.contracted_width = static_cast<int>(meta_value(td_text, "contracted_width"));
        ExactOracle ex(f.graph, vc.threads);
        EmbeddingReport r = verify_embedding(e, f.graph, ex, vc.threads);
        ok = r.ok;
        s << "width=" << e.width << " worst_slack=" << format_double(r.worst_slack)
          << " worst_undercut=" << format_double(r.worst_undercut) << "\n";
        if (!r.ok) s << "failure: " << r.first_failure << "\n";
      } else {
        throw InvalidArgument("unknown artifact kind " + vc_kind);
      }
      s << (ok ? "ok" : "FAILED") << "\n";
      emit(vc, s.str(), out);
      return ok ? kOk : kInvariant;
    };
  });

  // stats
  Common sc;
  std::string sc_graph, sc_cover;
  auto* stats = app.add_subcommand("stats", "Sizes, slacks and widths against their bounds");
  add_common(stats, sc);
  stats->add_option("graph", sc_graph)->required();
  stats->add_option("--cover", sc_cover, "Cover to measure");
  stats->callback([&] {
    action = [&] {
      GraphFile f = load_graph(sc_graph);
      std::ostringstream s;
      double delta = diameter(f.graph, sc.exact_diameter, sc.threads);
      TreeDecomposition td = min_fill_decomposition(f.graph);
      s << "n=" << f.graph.n() << " m=" << f.graph.m() << " diameter=" << format_double(delta)
        << (sc.exact_diameter ? "" : " (double sweep)") << " degeneracy=" << degeneracy(f.graph)
        << " min_fill_width=" << td.width() << "\n";
      if (!sc_cover.empty()) {
        ForestCover fc = read_cover(read_file(sc_cover));
        ExactOracle ex(f.graph, sc.threads);
        CoverCheck check;
        check.threads = sc.threads;
        CoverReport r = verify_cover(fc, f.graph, ex, check);
        double eps = fc.eps > 0 ? fc.eps : sc.eps;
        s << "forests=" << r.forests << " forest_bound=" << forest_count_bound(eps) << " trees=" << r.trees
          << " empty_forests=" << fc.empty_forests << "\n";
        s << "worst_slack=" << format_double(r.worst_slack)
          << " additive_bound=" << format_double(fc.additive_bound)
          << " slack_over_delta=" << format_double(r.worst_slack / ex.diameter())
          << " worst_ratio=" << format_double(r.worst_ratio) << " dominating=" << r.dominating
          << " max_tree_diameter=" << format_double(r.max_tree_diameter) << "\n";
      }
      emit(sc, s.str(), out);
      return kOk;
    };
  });

  std::vector<std::string> owned{"treecover"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : owned) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const ConstructionFailure& e) {
    err << "construction failure: " << e.what() << "\n";
    return kConstruction;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace treecover::cli
