#include "map2ec/graph.hpp"

#include <algorithm>

namespace map2ec {

const char* err_name(Err e) {
  switch (e) {
    case Err::SelfLoop: return "SelfLoop";
    case Err::ZeroEdgesNotMatching: return "ZeroEdgesNotMatching";
    case Err::NotTwoEdgeConnected: return "NotTwoEdgeConnected";
    case Err::OverlappingParts: return "OverlappingParts";
    case Err::UnknownEdgeId: return "UnknownEdgeId";
    case Err::NotTwoEdgeCover: return "NotTwoEdgeCover";
    case Err::TooLarge: return "TooLarge";
    case Err::WeightMismatch: return "WeightMismatch";
    case Err::CapacityExceedsDegree: return "CapacityExceedsDegree";
    case Err::InfeasibleDemand: return "InfeasibleDemand";
    case Err::ExchangeNotFound: return "ExchangeNotFound";
    case Err::InvariantViolated: return "InvariantViolated";
    case Err::NoPseudoEar: return "NoPseudoEar";
    case Err::CreditDeficit: return "CreditDeficit";
    case Err::PathNotFound: return "PathNotFound";
    case Err::CaseExhausted: return "CaseExhausted";
    case Err::NoObstruction: return "NoObstruction";
    case Err::VariantUndecidable: return "VariantUndecidable";
    case Err::PatchEdgeNotFound: return "PatchEdgeNotFound";
    case Err::NotStructured: return "NotStructured";
    case Err::GenerationFailed: return "GenerationFailed";
    case Err::ParseError: return "ParseError";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

bool set_contains(const std::vector<int>& s, int x) {
  return std::binary_search(s.begin(), s.end(), x);
}

void set_add(std::vector<int>& s, int x) {
  auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it == s.end() || *it != x) s.insert(it, x);
}

void set_remove(std::vector<int>& s, int x) {
  auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it != s.end() && *it == x) s.erase(it);
}

std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Graph::Graph(VertexSet vertices, std::vector<Edge> edges)
    : vertices_(sorted_unique(std::move(vertices))), edges_(std::move(edges)) {
  for (VertexId v : vertices_) adj_[v];
  for (EdgeId e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const Edge& ed = edges_[e];
    require(ed.u != ed.v, Err::SelfLoop, "edge " + std::to_string(e) + " is a self-loop at vertex " +
                                             std::to_string(ed.u));
    require(has_vertex(ed.u) && has_vertex(ed.v), Err::ParseError,
            "edge " + std::to_string(e) + " has an endpoint outside the vertex set");
    require(ed.weight == 0 || ed.weight == 1, Err::ParseError,
            "edge " + std::to_string(e) + " weight outside {0,1}");
    adj_[ed.u].push_back(e);
    adj_[ed.v].push_back(e);
  }
}

Graph Graph::from_triples(int n, const std::vector<std::array<int, 3>>& triples) {
  VertexSet vs;
  vs.reserve(n);
  for (int i = 1; i <= n; ++i) vs.push_back(i);
  std::vector<Edge> es;
  es.reserve(triples.size());
  for (const auto& t : triples) es.push_back(Edge{t[0], t[1], t[2]});
  return Graph(std::move(vs), std::move(es));
}

const Edge& Graph::edge(EdgeId e) const {
  require(e >= 0 && e < edge_count(), Err::UnknownEdgeId, "edge id " + std::to_string(e));
  return edges_[static_cast<std::size_t>(e)];
}

const EdgeSet& Graph::incident(VertexId v) const {
  auto it = adj_.find(v);
  require(it != adj_.end(), Err::UnknownEdgeId, "vertex " + std::to_string(v) + " not in graph");
  return it->second;
}

int Graph::unit_degree(VertexId v) const {
  int d = 0;
  for (EdgeId e : incident(v))
    if (edges_[static_cast<std::size_t>(e)].weight == 1) ++d;
  return d;
}

EdgeSet Graph::all_edge_ids() const {
  EdgeSet out(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) out[i] = static_cast<EdgeId>(i);
  return out;
}

EdgeSet Graph::unit_edge_ids() const {
  EdgeSet out;
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (edges_[static_cast<std::size_t>(e)].weight == 1) out.push_back(e);
  return out;
}

EdgeSet Graph::zero_edge_ids() const {
  EdgeSet out;
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (edges_[static_cast<std::size_t>(e)].weight == 0) out.push_back(e);
  return out;
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  if (!has_vertex(u) || !has_vertex(v)) return std::nullopt;
  for (EdgeId e : incident(u))
    if (edges_[static_cast<std::size_t>(e)].other(u) == v) return e;
  return std::nullopt;
}

bool Graph::simple() const {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(edges_.size());
  for (const Edge& e : edges_)
    pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

std::string format_edge(const Graph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  return "e" + std::to_string(e) + "{" + std::to_string(ed.u) + "," + std::to_string(ed.v) +
         ";w=" + std::to_string(ed.weight) + "}";
}

MapInstance validate_map_instance(const Graph& g) { return validate_map_instance(g, {}); }

MapInstance validate_map_instance(Graph g, EdgeSet pseudo_edges) {
  EdgeSet zeros = g.zero_edge_ids();
  std::map<VertexId, EdgeId> seen;
  for (EdgeId e : zeros) {
    for (VertexId v : {g.edge(e).u, g.edge(e).v}) {
      auto [it, fresh] = seen.emplace(v, e);
      require(fresh, Err::ZeroEdgesNotMatching,
              "zero edges " + format_edge(g, it->second) + " and " + format_edge(g, e) +
                  " share vertex " + std::to_string(v));
    }
  }
  if (g.vertex_count() > 0) {
    EdgeSet all = g.all_edge_ids();
    require(edges_connect(g, all, g.vertices()), Err::NotTwoEdgeConnected, "graph is disconnected");
    EdgeSet bs = bridges_in(g, all);
    require(bs.empty(), Err::NotTwoEdgeConnected,
            bs.empty() ? "" : "bridge " + format_edge(g, bs.front()));
  }
  for (EdgeId e : pseudo_edges)
    require(e >= 0 && e < g.edge_count() && g.edge(e).weight == 1, Err::Internal,
            "pseudo edge must be a unit edge of the graph");
  MapInstance inst;
  inst.zero_edges = std::move(zeros);
  inst.pseudo_edges = std::move(pseudo_edges);
  inst.graph = std::move(g);
  return inst;
}

int subgraph_weight(const Graph& g, const EdgeSet& f) {
  int w = 0;
  for (EdgeId e : f) w += g.edge(e).weight;
  return w;
}

namespace {

// Iterative DFS low-link bridge finder over the subgraph (V(g), f).
struct BridgeFinder {
  const Graph& g;
  const EdgeSet& f;
  std::map<VertexId, std::vector<std::pair<VertexId, EdgeId>>> adj;
  std::map<VertexId, int> disc, low;
  EdgeSet bridges;
  int timer = 0;

  BridgeFinder(const Graph& gr, const EdgeSet& fs) : g(gr), f(fs) {
    for (VertexId v : g.vertices()) adj[v];
    for (EdgeId e : f) {
      const Edge& ed = g.edge(e);
      adj[ed.u].emplace_back(ed.v, e);
      adj[ed.v].emplace_back(ed.u, e);
    }
  }

  void run() {
    for (VertexId root : g.vertices()) {
      if (disc.count(root)) continue;
      // frames: (vertex, parent edge id, next adjacency index, parent skipped)
      std::vector<std::array<int, 4>> stack;
      disc[root] = low[root] = timer++;
      stack.push_back({root, -1, 0, 0});
      while (!stack.empty()) {
        auto& fr = stack.back();
        VertexId v = fr[0];
        auto& nb = adj[v];
        if (fr[2] < static_cast<int>(nb.size())) {
          auto [to, eid] = nb[static_cast<std::size_t>(fr[2]++)];
          if (eid == fr[1] && !fr[3]) {
            fr[3] = 1;  // a parallel copy of the parent edge is a real back edge
            continue;
          }
          if (disc.count(to)) {
            low[v] = std::min(low[v], disc[to]);
          } else {
            disc[to] = low[to] = timer++;
            stack.push_back({to, eid, 0, 0});
          }
        } else {
          int parent_edge = fr[1];
          stack.pop_back();
          if (!stack.empty()) {
            VertexId parent = stack.back()[0];
            low[parent] = std::min(low[parent], low[v]);
            if (low[v] > disc[parent]) bridges.push_back(parent_edge);
          }
        }
      }
    }
    bridges = sorted_unique(bridges);
  }
};

}  // namespace

EdgeSet bridges_in(const Graph& g, const EdgeSet& f) {
  // The parent-edge skip above mishandles parallel edges (a second parallel
  // edge is a genuine back edge), so track the parent edge id, not the vertex.
  BridgeFinder bf(g, f);
  bf.run();
  return bf.bridges;
}

bool edges_connect(const Graph& g, const EdgeSet& f, const VertexSet& verts) {
  if (verts.empty()) return true;
  std::map<VertexId, std::vector<VertexId>> adj;
  for (VertexId v : verts) adj[v];
  for (EdgeId e : f) {
    const Edge& ed = g.edge(e);
    if (adj.count(ed.u) && adj.count(ed.v)) {
      adj[ed.u].push_back(ed.v);
      adj[ed.v].push_back(ed.u);
    }
  }
  std::vector<VertexId> stack{verts.front()};
  std::map<VertexId, bool> seen{{verts.front(), true}};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId to : adj[v])
      if (!seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
  }
  for (VertexId v : verts)
    if (!seen[v]) return false;
  return true;
}

bool is_spanning_2ec(const Graph& g, const EdgeSet& f) {
  if (g.vertex_count() == 0) return true;
  if (!edges_connect(g, f, g.vertices())) return false;
  return bridges_in(g, f).empty();
}

std::vector<VertexSet> components_of(const Graph& g, const EdgeSet& f) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (VertexId v : g.vertices()) adj[v];
  for (EdgeId e : f) {
    const Edge& ed = g.edge(e);
    adj[ed.u].push_back(ed.v);
    adj[ed.v].push_back(ed.u);
  }
  std::map<VertexId, bool> seen;
  std::vector<VertexSet> comps;
  for (VertexId root : g.vertices()) {
    if (seen[root]) continue;
    VertexSet comp;
    std::vector<VertexId> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (VertexId to : adj[v])
        if (!seen[to]) {
          seen[to] = true;
          stack.push_back(to);
        }
    }
    comps.push_back(sorted_unique(std::move(comp)));
  }
  return comps;  // roots visited in sorted order => ordered by lowest vertex
}

std::vector<VertexSet> components_of_vertices(const Graph& g, const VertexSet& verts) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (VertexId v : verts) adj[v];
  for (VertexId v : verts)
    for (EdgeId e : g.incident(v)) {
      VertexId to = g.edge(e).other(v);
      if (adj.count(to)) adj[v].push_back(to);
    }
  std::map<VertexId, bool> seen;
  std::vector<VertexSet> comps;
  for (VertexId root : verts) {
    if (seen[root]) continue;
    VertexSet comp;
    std::vector<VertexId> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (VertexId to : adj[v])
        if (!seen[to]) {
          seen[to] = true;
          stack.push_back(to);
        }
    }
    comps.push_back(sorted_unique(std::move(comp)));
  }
  return comps;
}

SizeClass size_class_of_weight(int w) {
  if (w <= 2) return SizeClass::Small;
  if (w == 3) return SizeClass::Medium;
  return SizeClass::Large;
}

const char* size_class_name(SizeClass c) {
  switch (c) {
    case SizeClass::Small: return "small";
    case SizeClass::Medium: return "medium";
    case SizeClass::Large: return "large";
  }
  return "?";
}

int Decomposition::component_of(VertexId v) const {
  auto it = comp_index.find(v);
  require(it != comp_index.end(), Err::Internal, "vertex not in decomposition");
  return it->second;
}

int Decomposition::count(SizeClass c) const {
  int n = 0;
  for (const Component& comp : components)
    if (comp.size_class == c) ++n;
  return n;
}

bool Decomposition::bridgeless() const {
  for (const Component& comp : components)
    if (!comp.bridges.empty()) return false;
  return true;
}

Decomposition decompose(const Graph& g, const EdgeSet& f) {
  std::map<VertexId, int> deg;
  for (EdgeId e : f) {
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  for (VertexId v : g.vertices())
    require(deg[v] >= 2, Err::NotTwoEdgeCover,
            "vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]));

  EdgeSet all_bridges = bridges_in(g, f);
  EdgeSet non_bridges = set_minus(f, all_bridges);

  Decomposition d;
  for (const VertexSet& cverts : components_of(g, f)) {
    if (cverts.size() == 1 && deg[cverts.front()] == 0) continue;  // unreachable: degree >= 2
    Component comp;
    comp.vertices = cverts;
    for (EdgeId e : f)
      if (set_contains(cverts, g.edge(e).u)) comp.edges.push_back(e);
    comp.edges = sorted_unique(std::move(comp.edges));
    comp.weight = subgraph_weight(g, comp.edges);
    comp.size_class = size_class_of_weight(comp.weight);
    comp.bridges = set_intersect(comp.edges, all_bridges);
    comp.complex = !comp.bridges.empty();

    // Blocks: components of (cverts, non-bridge edges) that carry an edge;
    // the remaining vertices are black.
    EdgeSet comp_nb = set_intersect(comp.edges, non_bridges);
    std::map<VertexId, std::vector<std::pair<VertexId, EdgeId>>> adj;
    for (VertexId v : cverts) adj[v];
    for (EdgeId e : comp_nb) {
      adj[g.edge(e).u].emplace_back(g.edge(e).v, e);
      adj[g.edge(e).v].emplace_back(g.edge(e).u, e);
    }
    std::map<VertexId, bool> seen;
    for (VertexId root : cverts) {
      if (seen[root]) continue;
      VertexSet bverts;
      EdgeSet bedges;
      std::vector<VertexId> stack{root};
      seen[root] = true;
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        bverts.push_back(v);
        for (auto [to, e] : adj[v]) {
          bedges.push_back(e);
          if (!seen[to]) {
            seen[to] = true;
            stack.push_back(to);
          }
        }
      }
      bverts = sorted_unique(std::move(bverts));
      bedges = sorted_unique(std::move(bedges));
      if (bedges.empty()) {
        comp.black_vertices.push_back(root);
        continue;
      }
      Block b;
      b.vertices = std::move(bverts);
      b.edges = std::move(bedges);
      b.weight = subgraph_weight(g, b.edges);
      b.size_class = size_class_of_weight(b.weight);
      for (EdgeId e : comp.bridges)
        if (set_contains(b.vertices, g.edge(e).u) || set_contains(b.vertices, g.edge(e).v))
          b.incident_bridges.push_back(e);
      b.pendant = b.incident_bridges.size() == 1;
      comp.blocks.push_back(std::move(b));
    }
    comp.black_vertices = sorted_unique(std::move(comp.black_vertices));
    if (comp.complex) {
      // #bridges = #blocks + #black - 1 on every complex component.
      long long t = static_cast<long long>(comp.blocks.size());
      long long s = static_cast<long long>(comp.black_vertices.size());
      require(static_cast<long long>(comp.bridges.size()) == t + s - 1, Err::Internal,
              "bridge/block/black count mismatch in decomposition");
    }
    d.components.push_back(std::move(comp));
  }
  for (int i = 0; i < static_cast<int>(d.components.size()); ++i)
    for (VertexId v : d.components[static_cast<std::size_t>(i)].vertices) d.comp_index[v] = i;
  return d;
}

std::pair<Graph, ContractionMap> contract(const Graph& g, const std::vector<VertexSet>& parts) {
  ContractionMap m;
  std::map<VertexId, VertexId> super;
  for (const VertexSet& part : parts) {
    require(!part.empty(), Err::OverlappingParts, "empty part");
    VertexId name = part.front();
    for (VertexId v : part) {
      require(g.has_vertex(v), Err::OverlappingParts, "part vertex not in graph");
      auto [it, fresh] = super.emplace(v, name);
      (void)it;
      require(fresh, Err::OverlappingParts, "vertex " + std::to_string(v) + " in two parts");
    }
  }
  VertexSet verts;
  for (VertexId v : g.vertices()) {
    auto it = super.find(v);
    VertexId img = it == super.end() ? v : it->second;
    m.vertex_map[v] = img;
    verts.push_back(img);
  }
  verts = sorted_unique(std::move(verts));

  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    VertexId u = m.vertex_map[ed.u];
    VertexId v = m.vertex_map[ed.v];
    if (u == v) {
      m.dropped_loops.push_back(e);
      continue;
    }
    EdgeId ne = static_cast<EdgeId>(edges.size());
    edges.push_back(Edge{u, v, ed.weight});
    m.edge_to_original.push_back(e);
    m.original_to_edge[e] = ne;
  }
  return {Graph(std::move(verts), std::move(edges)), std::move(m)};
}

EdgeSet expand_edges(const ContractionMap& m, const EdgeSet& f) {
  EdgeSet out;
  out.reserve(f.size());
  for (EdgeId e : f) {
    require(e >= 0 && e < static_cast<int>(m.edge_to_original.size()), Err::UnknownEdgeId,
            "contracted edge id " + std::to_string(e));
    out.push_back(m.edge_to_original[static_cast<std::size_t>(e)]);
  }
  return sorted_unique(std::move(out));
}

long long size_measure(const Graph& g) {
  long long n = g.vertex_count();
  return 10 * n * n + g.edge_count();
}

DerivedInstance induced_instance(const MapInstance& parent, const VertexSet& keep) {
  DerivedInstance d;
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < parent.graph.edge_count(); ++e) {
    const Edge& ed = parent.graph.edge(e);
    if (set_contains(keep, ed.u) && set_contains(keep, ed.v)) {
      edges.push_back(ed);
      d.to_parent.push_back(e);
    }
  }
  d.inst = validate_map_instance(Graph(keep, std::move(edges)));
  for (VertexId v : keep) d.vertex_map[v] = v;
  return d;
}

DerivedInstance contracted_instance(const MapInstance& parent, const std::vector<VertexSet>& parts) {
  auto [cg, cm] = contract(parent.graph, parts);
  DerivedInstance d;
  d.to_parent = cm.edge_to_original;
  d.vertex_map = cm.vertex_map;
  d.inst = validate_map_instance(std::move(cg));
  return d;
}

void add_pseudo_edges(DerivedInstance& d, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  if (pairs.empty()) return;
  std::vector<Edge> edges = d.inst.graph.edges();
  EdgeSet pseudo = d.inst.pseudo_edges;
  for (auto [u, v] : pairs) {
    pseudo.push_back(static_cast<EdgeId>(edges.size()));
    edges.push_back(Edge{u, v, 1});
    d.to_parent.push_back(-1);
  }
  d.inst = validate_map_instance(Graph(d.inst.graph.vertices(), std::move(edges)),
                                 sorted_unique(std::move(pseudo)));
}

DerivedInstance derive_induced(const DerivedInstance& base, const VertexSet& keep) {
  DerivedInstance inner = induced_instance(base.inst, keep);
  DerivedInstance out;
  out.inst = inner.inst;
  for (EdgeId e : inner.to_parent)
    out.to_parent.push_back(base.to_parent[static_cast<std::size_t>(e)]);
  for (const auto& [pv, bv] : base.vertex_map)
    if (inner.vertex_map.count(bv)) out.vertex_map[pv] = inner.vertex_map[bv];
  return out;
}

DerivedInstance derive_contracted(const DerivedInstance& base, const std::vector<VertexSet>& parts) {
  DerivedInstance inner = contracted_instance(base.inst, parts);
  DerivedInstance out;
  out.inst = inner.inst;
  for (EdgeId e : inner.to_parent)
    out.to_parent.push_back(base.to_parent[static_cast<std::size_t>(e)]);
  for (const auto& [pv, bv] : base.vertex_map)
    if (inner.vertex_map.count(bv)) out.vertex_map[pv] = inner.vertex_map[bv];
  return out;
}

EdgeSet map_to_parent(const DerivedInstance& d, const EdgeSet& derived_edges) {
  EdgeSet out;
  for (EdgeId e : derived_edges) {
    EdgeId p = d.to_parent[static_cast<std::size_t>(e)];
    require(p >= 0, Err::Internal, "pseudo edge leaked into a parent-mapped edge set");
    out.push_back(p);
  }
  return sorted_unique(std::move(out));
}

}  // namespace map2ec
