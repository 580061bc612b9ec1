#include "treecover/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "treecover/errors.hpp"

namespace treecover {

namespace {

using nlohmann::json;

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

int parse_int(const std::string& s) {
  int x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidArgument("bad integer: " + s);
  return x;
}

std::vector<int> int_tail(const std::vector<std::string>& tok, size_t from) {
  std::vector<int> out;
  for (size_t i = from; i < tok.size(); ++i) out.push_back(parse_int(tok[i]));
  return out;
}

// Non-empty lines, skipping '#' lines and, when c_comments is set, lines
// whose first token is "c".
std::vector<std::vector<std::string>> records(const std::string& text, bool c_comments = false) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tok = tokens(line);
    if (tok.empty() || (c_comments && tok[0] == "c")) continue;
    out.push_back(std::move(tok));
  }
  return out;
}

void expect(const std::vector<std::string>& tok, const char* tag, size_t min_size) {
  if (tok.empty() || tok[0] != tag || tok.size() < min_size)
    throw InvalidArgument(std::string("expected '") + tag + "' record");
}

template <typename T>
void join(std::ostringstream& out, const char* tag, const std::vector<T>& xs) {
  out << tag;
  for (const T& x : xs) {
    if constexpr (std::is_same_v<T, double>) out << ' ' << format_double(x);
    else out << ' ' << x;
  }
  out << '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw InvalidArgument("unformattable number");
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidArgument("bad number: " + s);
  return x;
}

std::string write_graph(const Graph& g, const Embedding* emb, const std::vector<int>* terminals) {
  std::ostringstream out;
  out << "p " << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  if (emb) {
    for (size_t v = 0; v < emb->rotation.size(); ++v) {
      out << "r " << v;
      for (int e : emb->rotation[v]) out << ' ' << e;
      out << '\n';
    }
    join(out, "outer", emb->outer_face);
  }
  if (terminals) join(out, "t", *terminals);
  return out.str();
}

GraphFile read_graph(const std::string& text, bool require_connected_graph) {
  auto recs = records(text, true);
  if (recs.empty()) throw InvalidArgument("empty graph file");
  expect(recs[0], "p", 3);
  int n = parse_int(recs[0][1]), m = parse_int(recs[0][2]);
  if (n < 0 || m < 0) throw InvalidArgument("negative graph size");
  std::vector<Edge> edges;
  Embedding emb;
  bool has_rotation = false, has_outer = false, has_terminals = false;
  std::vector<int> terminals;
  for (size_t i = 1; i < recs.size(); ++i) {
    const auto& tok = recs[i];
    if (tok[0] == "e") {
      if (tok.size() != 4) throw InvalidArgument("edge record needs u v w");
      edges.push_back({parse_int(tok[1]), parse_int(tok[2]), parse_double(tok[3])});
    } else if (tok[0] == "r") {
      if (tok.size() < 2) throw InvalidArgument("rotation record needs a vertex");
      int v = parse_int(tok[1]);
      if (v < 0 || v >= n) throw InvalidArgument("rotation vertex out of range");
      if (!has_rotation) emb.rotation.assign(n, {});
      has_rotation = true;
      emb.rotation[v] = int_tail(tok, 2);
    } else if (tok[0] == "outer") {
      has_outer = true;
      emb.outer_face = int_tail(tok, 1);
    } else if (tok[0] == "t") {
      has_terminals = true;
      terminals = int_tail(tok, 1);
    } else {
      throw InvalidArgument("unknown record '" + tok[0] + "'");
    }
  }
  if (static_cast<int>(edges.size()) != m) throw InvalidArgument("edge count does not match header");
  GraphFile f;
  f.graph = Graph(n, std::move(edges));
  if (require_connected_graph) require_connected(f.graph);
  if (has_rotation != has_outer) throw InvalidArgument("rotation and outer face must appear together");
  if (has_rotation) f.embedding = std::move(emb);
  if (has_terminals) {
    for (int t : terminals)
      if (t < 0 || t >= n) throw InvalidArgument("terminal out of range");
    f.terminals = std::move(terminals);
  }
  return f;
}

std::string write_cover(const ForestCover& fc) {
  std::ostringstream out;
  out << "cover " << fc.forests.size() << ' ' << format_double(fc.eps) << ' ' << format_double(fc.delta) << ' '
      << format_double(fc.additive_bound) << ' ' << fc.empty_forests << '\n';
  for (const auto& forest : fc.forests) {
    out << "forest " << forest.size() << '\n';
    for (const RootedTree& t : forest) {
      out << "tree " << tree_kind_name(t.kind) << ' ' << t.root << ' ' << t.size() << '\n';
      join(out, "v", t.vertex);
      join(out, "p", t.parent);
      join(out, "w", t.weight);
    }
  }
  return out.str();
}

ForestCover read_cover(const std::string& text) {
  auto recs = records(text);
  size_t i = 0;
  auto next = [&](const char* tag, size_t min_size) -> const std::vector<std::string>& {
    if (i >= recs.size()) throw InvalidArgument(std::string("cover ends before '") + tag + "'");
    expect(recs[i], tag, min_size);
    return recs[i++];
  };
  const auto& head = next("cover", 6);
  ForestCover fc;
  int forests = parse_int(head[1]);
  fc.eps = parse_double(head[2]);
  fc.delta = parse_double(head[3]);
  fc.additive_bound = parse_double(head[4]);
  fc.empty_forests = parse_int(head[5]);
  for (int f = 0; f < forests; ++f) {
    int trees = parse_int(next("forest", 2)[1]);
    std::vector<RootedTree> forest;
    for (int k = 0; k < trees; ++k) {
      const auto& th = next("tree", 4);
      RootedTree t;
      t.kind = parse_tree_kind(th[1]);
      t.root = parse_int(th[2]);
      size_t size = static_cast<size_t>(parse_int(th[3]));
      t.vertex = int_tail(next("v", 1), 1);
      t.parent = int_tail(next("p", 1), 1);
      const auto& w = next("w", 1);
      for (size_t j = 1; j < w.size(); ++j) t.weight.push_back(parse_double(w[j]));
      if (t.vertex.size() != size || t.parent.size() != size || t.weight.size() != size)
        throw InvalidArgument("tree arrays do not match the declared size");
      forest.push_back(std::move(t));
    }
    fc.forests.push_back(std::move(forest));
  }
  if (i != recs.size()) throw InvalidArgument("trailing records after cover");
  return fc;
}

std::string write_partition(const Partition& p) {
  std::ostringstream out;
  out << "partition " << p.cluster_of.size() << ' ' << p.size() << ' ' << format_double(p.eps) << ' '
      << format_double(p.t) << ' ' << format_double(p.delta) << '\n';
  for (const Cluster& c : p.clusters)
    out << "c " << c.center << ' ' << c.node << ' ' << c.column << ' ' << c.ordinal << '\n';
  join(out, "a", p.cluster_of);
  return out.str();
}

Partition read_partition(const std::string& text) {
  auto recs = records(text);
  if (recs.empty()) throw InvalidArgument("empty partition file");
  expect(recs[0], "partition", 6);
  int n = parse_int(recs[0][1]), k = parse_int(recs[0][2]);
  Partition p;
  p.eps = parse_double(recs[0][3]);
  p.t = parse_double(recs[0][4]);
  p.delta = parse_double(recs[0][5]);
  if (static_cast<int>(recs.size()) != k + 2) throw InvalidArgument("partition record count mismatch");
  for (int c = 0; c < k; ++c) {
    expect(recs[c + 1], "c", 5);
    Cluster cl;
    cl.center = parse_int(recs[c + 1][1]);
    cl.node = parse_int(recs[c + 1][2]);
    cl.column = parse_int(recs[c + 1][3]);
    cl.ordinal = parse_int(recs[c + 1][4]);
    p.clusters.push_back(std::move(cl));
  }
  expect(recs[k + 1], "a", 1);
  p.cluster_of = int_tail(recs[k + 1], 1);
  if (static_cast<int>(p.cluster_of.size()) != n) throw InvalidArgument("cluster assignment length mismatch");
  for (int c : p.cluster_of)
    if (c < 0 || c >= k) throw InvalidArgument("cluster id out of range");
  rebuild_cluster_vertices(p);
  return p;
}

std::string write_hierarchy(const GridtreeHierarchy& h) {
  json nodes = json::array();
  for (const HierarchyNode& node : h.nodes) {
    json columns = json::array();
    for (const Column& c : node.tree.columns)
      columns.push_back({{"parent", c.parent}, {"level", c.level}, {"vertices", c.vertices}, {"spine", c.spine}});
    json tree = {{"width", node.tree.width},
                 {"host", node.tree.host},
                 {"columns", columns},
                 {"leftover", node.tree.leftover}};
    nodes.push_back({{"parent", node.parent},
                     {"layer", node.layer},
                     {"outer", node.outer},
                     {"external", node.external},
                     {"children", node.children},
                     {"gridtree", tree}});
  }
  json doc = {{"width", h.width}, {"nodes", nodes}};
  return doc.dump(1) + "\n";
}

GridtreeHierarchy read_hierarchy(const std::string& text) {
  try {
    json doc = json::parse(text);
    GridtreeHierarchy h;
    h.width = doc.at("width").get<double>();
    for (const json& jn : doc.at("nodes")) {
      HierarchyNode node;
      node.parent = jn.at("parent").get<int>();
      node.layer = jn.at("layer").get<int>();
      node.outer = jn.at("outer").get<std::vector<int>>();
      node.external = jn.at("external").get<std::vector<int>>();
      node.children = jn.at("children").get<std::vector<int>>();
      const json& jt = jn.at("gridtree");
      node.tree.width = jt.at("width").get<double>();
      node.tree.host = jt.at("host").get<std::vector<int>>();
      node.tree.leftover = jt.at("leftover").get<std::vector<std::vector<int>>>();
      for (const json& jc : jt.at("columns")) {
        Column c;
        c.parent = jc.at("parent").get<int>();
        c.level = jc.at("level").get<int>();
        c.vertices = jc.at("vertices").get<std::vector<int>>();
        c.spine = jc.at("spine").get<std::vector<int>>();
        node.tree.columns.push_back(std::move(c));
      }
      h.nodes.push_back(std::move(node));
    }
    return h;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad hierarchy json: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!out) throw InvalidArgument("write failed for " + path);
}

}  // namespace treecover
