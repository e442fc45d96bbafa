#include "map2ec/cover.hpp"

#include <algorithm>

#include "map2ec/matching.hpp"

namespace map2ec {

TwoEdgeCover make_cover(const MapInstance& inst, EdgeSet edges, CoverProvenance prov) {
  TwoEdgeCover c;
  c.decomp = decompose(inst.graph, edges);
  c.edges = std::move(edges);
  c.provenance = prov;
  return c;
}

TwoEdgeCover compute_d2(const MapInstance& inst) {
  const Graph& g = inst.graph;
  std::map<VertexId, int> zero_deg;
  for (EdgeId e : inst.zero_edges) {
    ++zero_deg[g.edge(e).u];
    ++zero_deg[g.edge(e).v];
  }
  // Unit subgraph with its own edge ids; remember the instance ids.
  std::vector<Edge> unit_edges;
  std::vector<EdgeId> to_inst;
  for (EdgeId e : g.unit_edge_ids()) {
    unit_edges.push_back(g.edge(e));
    to_inst.push_back(e);
  }
  Graph g1(g.vertices(), unit_edges);
  DegreeBounds caps;
  for (VertexId v : g.vertices()) {
    int demand = 2 - (zero_deg.count(v) ? zero_deg[v] : 0);
    int cap = g1.degree(v) - demand;
    require(cap >= 0, Err::InfeasibleDemand,
            "vertex " + std::to_string(v) + " cannot reach degree 2");
    caps.cap[v] = cap;
  }
  EdgeSet dropped = max_degree_constrained_subgraph(g1, caps);
  EdgeSet cover = inst.zero_edges;
  for (EdgeId e1 = 0; e1 < g1.edge_count(); ++e1)
    if (!set_contains(dropped, e1)) set_add(cover, to_inst[static_cast<std::size_t>(e1)]);
  return make_cover(inst, std::move(cover), CoverProvenance::Raw);
}

long long rho(const MapInstance& inst, const TwoEdgeCover& h) {
  long long n = inst.graph.vertex_count();
  long long n_c = static_cast<long long>(h.decomp.components.size());
  long long n_s = 0, n_m = 0;
  for (const Component& c : h.decomp.components)
    for (const Block& b : c.blocks) {
      if (b.size_class == SizeClass::Small && b.vertices.size() == 3) ++n_s;
      if (b.size_class == SizeClass::Medium) {
        bool unit_bridge = false;
        for (EdgeId e : b.incident_bridges)
          if (inst.graph.edge(e).weight == 1) unit_bridge = true;
        if (!unit_bridge) ++n_m;
      }
    }
  return n * n * n_c + n * n_s + n_m;
}

namespace {

struct Exchange {
  EdgeId remove;
  EdgeId add;
};

VertexId bridge_endpoint_in(const Graph& g, const Block& b, EdgeId bridge) {
  const Edge& ed = g.edge(bridge);
  if (set_contains(b.vertices, ed.u)) return ed.u;
  require(set_contains(b.vertices, ed.v), Err::Internal, "bridge not incident to block");
  return ed.v;
}

EdgeSet outside_edges(const Graph& g, const EdgeSet& cover, VertexId v) {
  EdgeSet out;
  for (EdgeId e : g.incident(v))
    if (!set_contains(cover, e)) out.push_back(e);
  return out;
}

std::optional<EdgeId> block_edge_between(const Graph& g, const Block& b, VertexId u, VertexId v) {
  for (EdgeId e : b.edges)
    if (g.edge(e).touches(u) && g.edge(e).touches(v)) return e;
  return std::nullopt;
}

// Small pendant block on 3 vertices: swap one of u's unit block edges for an
// edge leaving the triangle, per the reduction lemma's two cases.
std::vector<Exchange> small_block_exchanges(const Graph& g, const EdgeSet& cover, const Block& b) {
  std::vector<Exchange> out;
  require(b.incident_bridges.size() == 1, Err::Internal, "pendant block without unique bridge");
  require(b.vertices.size() == 3, Err::ExchangeNotFound,
          "small pendant block on " + std::to_string(b.vertices.size()) + " vertices");
  VertexId u = bridge_endpoint_in(g, b, b.incident_bridges.front());
  VertexSet others = b.vertices;
  set_remove(others, u);
  for (VertexId x : others) {
    auto ux = block_edge_between(g, b, u, x);
    if (!ux || g.edge(*ux).weight != 1) continue;
    for (EdgeId e : outside_edges(g, cover, x)) out.push_back({*ux, e});
  }
  for (VertexId x : others) {
    auto ux = block_edge_between(g, b, u, x);
    if (!ux || g.edge(*ux).weight != 0) continue;
    VertexId y = others[0] == x ? others[1] : others[0];
    auto uy = block_edge_between(g, b, u, y);
    if (!uy || g.edge(*uy).weight != 1) continue;
    for (EdgeId e : outside_edges(g, cover, y)) out.push_back({*uy, e});
  }
  return out;
}

// Medium block with no unit-edge bridge: u sits on the zero bridge, v/w are
// its cycle neighbors; either route around u through an outside edge, or add
// the chord {v,w}.
std::vector<Exchange> medium_block_exchanges(const Graph& g, const EdgeSet& cover, const Block& b) {
  std::vector<Exchange> out;
  EdgeId zbridge = -1;
  for (EdgeId e : b.incident_bridges)
    if (g.edge(e).weight == 0) {
      zbridge = e;
      break;
    }
  require(zbridge != -1, Err::Internal, "medium exchange target has no zero bridge");
  VertexId u = bridge_endpoint_in(g, b, zbridge);
  VertexSet nbrs;
  for (EdgeId e : b.edges)
    if (g.edge(e).touches(u)) set_add(nbrs, g.edge(e).other(u));
  require(nbrs.size() == 2, Err::ExchangeNotFound, "medium block is not a cycle at the bridge");
  for (VertexId x : nbrs) {
    auto ux = block_edge_between(g, b, u, x);
    if (!ux || g.edge(*ux).weight != 1) continue;
    for (EdgeId e : g.incident(x)) {
      if (set_contains(cover, e)) continue;
      if (set_contains(b.vertices, g.edge(e).other(x))) continue;
      out.push_back({*ux, e});
    }
  }
  // chord case
  VertexId v = nbrs[0], w = nbrs[1];
  for (EdgeId e : g.incident(v)) {
    if (set_contains(cover, e) || g.edge(e).other(v) != w) continue;
    for (VertexId x : nbrs) {
      auto ux = block_edge_between(g, b, u, x);
      if (ux && g.edge(*ux).weight == 1) out.push_back({*ux, e});
    }
  }
  return out;
}

}  // namespace

bool is_canonical(const MapInstance& inst, const TwoEdgeCover& h) {
  for (EdgeId e : inst.zero_edges)
    if (!set_contains(h.edges, e)) return false;
  for (const Component& c : h.decomp.components)
    for (const Block& b : c.blocks) {
      if (!b.pendant) continue;
      if (b.size_class == SizeClass::Small && b.vertices.size() != 4) return false;
      if (b.size_class == SizeClass::Medium) {
        bool unit_bridge = false;
        for (EdgeId e : b.incident_bridges)
          if (inst.graph.edge(e).weight == 1) unit_bridge = true;
        if (!unit_bridge) return false;
      }
    }
  return true;
}

TwoEdgeCover canonicalize_d2(const MapInstance& inst, const TwoEdgeCover& h) {
  const Graph& g = inst.graph;
  for (EdgeId e : inst.zero_edges)
    require(set_contains(h.edges, e), Err::Internal, "canonicalize_d2 needs all zero edges present");
  TwoEdgeCover cur = h;
  long long cur_rho = rho(inst, cur);
  int weight0 = cur.weight(g);
  long long steps = 0;
  const long long step_cap = cur_rho + 1;  // strict integer descent
  while (true) {
    std::vector<Exchange> candidates;
    // small pendant 3-vertex blocks first, then mediums without a unit bridge
    for (const Component& c : cur.decomp.components)
      for (const Block& b : c.blocks)
        if (b.pendant && b.size_class == SizeClass::Small && b.vertices.size() < 4) {
          auto ex = small_block_exchanges(g, cur.edges, b);
          candidates.insert(candidates.end(), ex.begin(), ex.end());
        }
    if (candidates.empty()) {
      for (const Component& c : cur.decomp.components)
        for (const Block& b : c.blocks) {
          if (b.size_class != SizeClass::Medium || b.incident_bridges.empty()) continue;
          bool unit_bridge = false;
          for (EdgeId e : b.incident_bridges)
            if (g.edge(e).weight == 1) unit_bridge = true;
          if (unit_bridge) continue;
          auto ex = medium_block_exchanges(g, cur.edges, b);
          candidates.insert(candidates.end(), ex.begin(), ex.end());
        }
      if (candidates.empty()) break;  // canonical
    }
    bool applied = false;
    for (const Exchange& ex : candidates) {
      require(g.edge(ex.remove).weight == 1 && g.edge(ex.add).weight == 1, Err::Internal,
              "exchanges swap unit edges only");
      EdgeSet next = cur.edges;
      set_remove(next, ex.remove);
      set_add(next, ex.add);
      TwoEdgeCover tc;
      try {
        tc = make_cover(inst, next, CoverProvenance::Raw);
      } catch (const MapError&) {
        continue;  // not a 2-edge-cover; try the next candidate
      }
      long long r = rho(inst, tc);
      if (r < cur_rho) {
        cur = std::move(tc);
        cur_rho = r;
        applied = true;
        break;
      }
    }
    require(applied, Err::ExchangeNotFound,
            "no rho-decreasing exchange for a non-canonical block (input not structured?)");
    require(++steps <= step_cap, Err::Internal, "canonicalization exceeded its descent bound");
  }
  require(cur.weight(g) == weight0, Err::Internal, "canonicalization changed the cover weight");
  require(is_canonical(inst, cur), Err::Internal, "canonicalization fixed point is not canonical");
  cur.provenance = CoverProvenance::Canonical;
  return cur;
}

}  // namespace map2ec
