#include "map2ec/io.hpp"

#include <fstream>
#include <sstream>

namespace map2ec {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  fail(Err::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct ParsedEdges {
  int n = -1;
  long long m = -1;
  std::vector<std::array<int, 3>> triples;
};

ParsedEdges read_edges(std::istream& in, const std::string& header_kind) {
  ParsedEdges out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p" || tag == "s") {
      if (tag != header_kind) parse_fail(lineno, "unexpected header '" + tag + "'");
      std::string kind;
      ls >> kind;
      if (kind != "map") parse_fail(lineno, "expected '" + header_kind + " map'");
      if (!(ls >> out.n >> out.m)) parse_fail(lineno, "malformed header");
      if (tag == "s") {
        long long w;
        if (!(ls >> w)) parse_fail(lineno, "solution header missing weight");
      }
      continue;
    }
    if (tag == "e") {
      int u, v, w;
      if (!(ls >> u >> v >> w)) parse_fail(lineno, "malformed edge line");
      if (out.n < 0) parse_fail(lineno, "edge line before header");
      if (u < 1 || u > out.n || v < 1 || v > out.n)
        parse_fail(lineno, "vertex id out of range 1.." + std::to_string(out.n));
      if (w != 0 && w != 1) parse_fail(lineno, "WeightOutOfRange: weight must be 0 or 1");
      out.triples.push_back({u, v, w});
      continue;
    }
    parse_fail(lineno, "unknown line tag '" + tag + "'");
  }
  if (out.n < 0) fail(Err::ParseError, "missing '" + header_kind + " map' header");
  return out;
}

}  // namespace

MapInstance parse_instance(std::istream& in) {
  ParsedEdges p = read_edges(in, "p");
  require(static_cast<long long>(p.triples.size()) == p.m, Err::ParseError,
          "header announces " + std::to_string(p.m) + " edges, found " +
              std::to_string(p.triples.size()));
  return validate_map_instance(Graph::from_triples(p.n, p.triples));
}

MapInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Err::ParseError, "cannot open " + path);
  return parse_instance(in);
}

std::string serialize_instance(const MapInstance& inst) {
  std::ostringstream out;
  out << "p map " << inst.graph.vertex_count() << " " << inst.graph.edge_count() << "\n";
  for (const Edge& e : inst.graph.edges()) out << "e " << e.u << " " << e.v << " " << e.weight << "\n";
  return out.str();
}

EdgeSet parse_solution(std::istream& in, const MapInstance& inst) {
  ParsedEdges p = read_edges(in, "s");
  // match by (endpoints, weight) multiset, lowest free id first
  std::map<std::tuple<int, int, int>, std::vector<EdgeId>> pool;
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) {
    const Edge& ed = inst.graph.edge(e);
    pool[{std::min(ed.u, ed.v), std::max(ed.u, ed.v), ed.weight}].push_back(e);
  }
  EdgeSet out;
  for (const auto& t : p.triples) {
    auto key = std::make_tuple(std::min(t[0], t[1]), std::max(t[0], t[1]), t[2]);
    auto it = pool.find(key);
    require(it != pool.end() && !it->second.empty(), Err::ParseError,
            "solution edge " + std::to_string(t[0]) + "-" + std::to_string(t[1]) +
                " (w=" + std::to_string(t[2]) + ") is not an unused instance edge");
    out.push_back(it->second.front());
    it->second.erase(it->second.begin());
  }
  return sorted_unique(std::move(out));
}

EdgeSet parse_solution_file(const std::string& path, const MapInstance& inst) {
  std::ifstream in(path);
  require(in.good(), Err::ParseError, "cannot open " + path);
  return parse_solution(in, inst);
}

std::string serialize_solution(const MapInstance& inst, const EdgeSet& edges) {
  std::ostringstream out;
  out << "s map " << inst.graph.vertex_count() << " " << edges.size() << " "
      << subgraph_weight(inst.graph, edges) << "\n";
  for (EdgeId e : edges) {
    const Edge& ed = inst.graph.edge(e);
    out << "e " << ed.u << " " << ed.v << " " << ed.weight << "\n";
  }
  return out.str();
}

}  // namespace map2ec
