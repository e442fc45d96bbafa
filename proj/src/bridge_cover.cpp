#include "map2ec/bridge_cover.hpp"

#include <algorithm>
#include <deque>

namespace map2ec {

namespace {

Rational vertex_credit(const Graph& g, const EdgeSet& cover, VertexId v) {
  int d = 0;
  for (EdgeId e : g.incident(v))
    if (set_contains(cover, e) && g.edge(e).weight == 1) ++d;
  return rat(5, 16) * rat(d);
}

Rational block_pool(const Graph& g, const EdgeSet& cover, const Block& b) {
  Rational p = rat(0);
  for (VertexId v : b.vertices) p += vertex_credit(g, cover, v);
  return p;
}

Rational lone_block_minimum(SizeClass c) {
  switch (c) {
    case SizeClass::Small: return rat(1, 4);
    case SizeClass::Medium: return rat(7, 8);
    case SizeClass::Large: return rat(1);
  }
  return rat(1);
}

}  // namespace

Rational CreditLedger::total() const {
  Rational t = rat(0);
  for (const Rational& r : component_credit) t += r;
  for (const auto& bs : block_credit)
    for (const Rational& r : bs) t += r;
  for (const auto& [v, r] : black_credit) t += r;
  return t;
}

CreditLedger init_credits(const MapInstance& inst, const TwoEdgeCover& h) {
  const Graph& g = inst.graph;
  CreditLedger led;
  for (const Component& c : h.decomp.components) {
    std::vector<Rational> blocks(c.blocks.size(), rat(0));
    Rational comp = rat(0);
    for (VertexId v : c.black_vertices) led.black_credit[v] = vertex_credit(g, h.edges, v);
    if (!c.complex) {
      require(c.blocks.size() == 1, Err::Internal, "bridgeless component with several blocks");
      Rational pool = block_pool(g, h.edges, c.blocks[0]);
      blocks[0] = lone_block_minimum(c.blocks[0].size_class);
      comp = pool - blocks[0];
    } else {
      int large = -1;
      for (std::size_t i = 0; i < c.blocks.size(); ++i)
        if (large == -1 && c.blocks[i].size_class == SizeClass::Large)
          large = static_cast<int>(i);
      if (large >= 0) {
        // the large block funds the component credit and keeps the rest
        for (std::size_t i = 0; i < c.blocks.size(); ++i)
          blocks[i] = block_pool(g, h.edges, c.blocks[i]);
        blocks[static_cast<std::size_t>(large)] -= rat(1);
        comp = rat(1);
      } else {
        // two pendant blocks fund the component credit and one b-credit each
        std::vector<std::size_t> pendants;
        for (std::size_t i = 0; i < c.blocks.size(); ++i)
          if (c.blocks[i].pendant) pendants.push_back(i);
        require(pendants.size() >= 2, Err::Internal,
                "complex component with fewer than 2 pendant blocks");
        std::size_t b1 = pendants[0], b2 = pendants[1];
        comp = block_pool(g, h.edges, c.blocks[b1]) + block_pool(g, h.edges, c.blocks[b2]) - rat(2);
        for (std::size_t i = 0; i < c.blocks.size(); ++i)
          blocks[i] = (i == b1 || i == b2) ? rat(1) : block_pool(g, h.edges, c.blocks[i]);
      }
    }
    led.component_credit.push_back(comp);
    led.block_credit.push_back(std::move(blocks));
  }
  // Conservation: everything distributed is the 5/8 spare of every unit edge.
  require(led.total() == rat(5, 8) * rat(subgraph_weight(g, h.edges)), Err::Internal,
          "credit initialization lost credit");
  check_credit_invariant(inst, h, led);
  return led;
}

void check_credit_invariant(const MapInstance& inst, const TwoEdgeCover& h,
                            const CreditLedger& ledger) {
  const Graph& g = inst.graph;
  const auto& comps = h.decomp.components;
  require(ledger.component_credit.size() == comps.size(), Err::Internal, "ledger misaligned");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Component& c = comps[i];
    require(ledger.component_credit[i] >= rat(1), Err::InvariantViolated,
            "component at vertex " + std::to_string(c.vertices.front()) + " has c-credit " +
                to_string(ledger.component_credit[i]));
    require(ledger.block_credit[i].size() == c.blocks.size(), Err::Internal, "ledger misaligned");
    for (std::size_t j = 0; j < c.blocks.size(); ++j) {
      Rational need = c.complex ? rat(1) : lone_block_minimum(c.blocks[j].size_class);
      require(ledger.block_credit[i][j] >= need, Err::InvariantViolated,
              "block at vertex " + std::to_string(c.blocks[j].vertices.front()) +
                  " has b-credit " + to_string(ledger.block_credit[i][j]));
    }
    for (VertexId v : c.black_vertices) {
      auto it = ledger.black_credit.find(v);
      require(it != ledger.black_credit.end() && it->second >= vertex_credit(g, h.edges, v),
              Err::InvariantViolated, "black vertex " + std::to_string(v) + " underfunded");
    }
  }
}

namespace {

// Lexicographically smallest shortest path between two vertex sets inside a
// fixed edge set; BFS with sorted relaxation.
std::vector<VertexId> bfs_path(const Graph& g, const EdgeSet& edges, const VertexSet& from,
                               const VertexSet& to, const VertexSet& forbidden) {
  std::map<VertexId, std::vector<std::pair<VertexId, EdgeId>>> adj;
  for (EdgeId e : edges) {
    const Edge& ed = g.edge(e);
    adj[ed.u].emplace_back(ed.v, e);
    adj[ed.v].emplace_back(ed.u, e);
  }
  for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
  std::map<VertexId, VertexId> parent;
  std::deque<VertexId> q;
  for (VertexId s : from) {
    if (set_contains(forbidden, s)) continue;
    parent[s] = s;
    q.push_back(s);
  }
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    if (set_contains(to, v) && !set_contains(from, v)) {
      std::vector<VertexId> path{v};
      while (parent[path.back()] != path.back()) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto [w, e] : adj[v]) {
      (void)e;
      if (set_contains(forbidden, w) || parent.count(w)) continue;
      parent[w] = v;
      q.push_back(w);
    }
  }
  return {};
}

EdgeId cover_edge_between(const Graph& g, const EdgeSet& cover, VertexId a, VertexId b) {
  for (EdgeId e : g.incident(a))
    if (set_contains(cover, e) && g.edge(e).other(a) == b) return e;
  fail(Err::Internal, "expected a cover edge between adjacent path vertices");
}

}  // namespace

PseudoEar find_pseudo_ear(const MapInstance& inst, const TwoEdgeCover& h, int comp0, int block) {
  const Graph& g = inst.graph;
  const Component& c0 = h.decomp.components[static_cast<std::size_t>(comp0)];
  const Block& b = c0.blocks[static_cast<std::size_t>(block)];
  require(b.pendant, Err::Internal, "pseudo-ear start block must be pendant");

  PseudoEar ear;
  ear.comp0 = comp0;
  ear.block = block;
  ear.bridge = b.incident_bridges.front();
  const Edge& br = g.edge(ear.bridge);
  ear.r = set_contains(b.vertices, br.u) ? br.u : br.v;
  ear.u = br.other(ear.r);

  // P' = r, u_1(=u), u_2, ... : shortest path from u onward to the nearest
  // white vertex, not crossing back through r.
  VertexSet whites;
  for (const Block& bl : c0.blocks)
    for (VertexId v : bl.vertices) set_add(whites, v);
  std::vector<VertexId> pprime{ear.r};
  {
    std::vector<VertexId> tail =
        set_contains(whites, ear.u) ? std::vector<VertexId>{ear.u}
                                    : bfs_path(g, c0.edges, {ear.u}, whites, {ear.r});
    require(!tail.empty(), Err::NoPseudoEar, "no block reachable behind the bridge");
    for (VertexId v : tail) pprime.push_back(v);
  }
  int k = static_cast<int>(pprime.size()) - 1;  // edges on P'; u_k is white
  auto prefix_units = [&](int edges) {
    int units = 0;
    for (int i = 0; i < edges; ++i) {
      EdgeId e = i == 0 ? ear.bridge
                        : cover_edge_between(g, h.edges, pprime[static_cast<std::size_t>(i)],
                                             pprime[static_cast<std::size_t>(i + 1)]);
      if (g.edge(e).weight == 1) ++units;
    }
    return units;
  };
  int zsize;
  if (k <= 1) {
    zsize = 0;
  } else if (k == 2) {
    zsize = 1;
  } else if (k == 3) {
    zsize = prefix_units(3) == 3 ? 1 : 2;
  } else {
    int units = prefix_units(std::min(k, 5));
    zsize = units <= 2 ? 3 : (units == 3 ? 2 : 1);
  }
  for (int i = 1; i <= zsize; ++i) set_add(ear.exclusion, pprime[static_cast<std::size_t>(i)]);

  // Shortest ear: contract every other component, walk non-cover edges from B
  // to C0 \ (V(B) u Z).
  std::map<VertexId, int> node_of;  // graph vertex -> aux node
  std::vector<std::vector<std::pair<int, EdgeId>>> aux;
  std::vector<VertexId> aux_vertex;  // aux node -> C0 vertex or -1
  std::vector<int> aux_comp;         // aux node -> component index or -1
  auto new_node = [&](VertexId v, int comp) {
    aux.emplace_back();
    aux_vertex.push_back(v);
    aux_comp.push_back(comp);
    return static_cast<int>(aux.size()) - 1;
  };
  for (VertexId v : c0.vertices)
    if (!set_contains(ear.exclusion, v)) node_of[v] = new_node(v, -1);
  for (std::size_t ci = 0; ci < h.decomp.components.size(); ++ci) {
    if (static_cast<int>(ci) == comp0) continue;
    int node = new_node(-1, static_cast<int>(ci));
    for (VertexId v : h.decomp.components[ci].vertices) node_of[v] = node;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (set_contains(h.edges, e)) continue;
    auto iu = node_of.find(g.edge(e).u);
    auto iv = node_of.find(g.edge(e).v);
    if (iu == node_of.end() || iv == node_of.end()) continue;  // touches Z
    if (iu->second == iv->second) continue;                    // loop inside a component
    aux[static_cast<std::size_t>(iu->second)].emplace_back(iv->second, e);
    aux[static_cast<std::size_t>(iv->second)].emplace_back(iu->second, e);
  }
  for (auto& nb : aux) std::sort(nb.begin(), nb.end());

  std::vector<int> parent_node(aux.size(), -2);
  std::vector<EdgeId> parent_edge(aux.size(), -1);
  std::deque<int> q;
  for (VertexId v : b.vertices) {
    int nv = node_of.at(v);
    parent_node[static_cast<std::size_t>(nv)] = -1;
    q.push_back(nv);
  }
  int head_node = -1;
  while (!q.empty() && head_node == -1) {
    int v = q.front();
    q.pop_front();
    VertexId gv = aux_vertex[static_cast<std::size_t>(v)];
    if (gv != -1 && !set_contains(b.vertices, gv)) {
      head_node = v;
      break;
    }
    for (auto [to, e] : aux[static_cast<std::size_t>(v)]) {
      if (parent_node[static_cast<std::size_t>(to)] != -2) continue;
      parent_node[static_cast<std::size_t>(to)] = v;
      parent_edge[static_cast<std::size_t>(to)] = e;
      q.push_back(to);
    }
  }
  require(head_node != -1, Err::NoPseudoEar,
          "no pseudo-ear avoiding Z of size " + std::to_string(zsize) +
              " (structuredness violation)");
  ear.head = aux_vertex[static_cast<std::size_t>(head_node)];
  for (int v = head_node; parent_node[static_cast<std::size_t>(v)] != -1;
       v = parent_node[static_cast<std::size_t>(v)]) {
    ear.ear_edges.push_back(parent_edge[static_cast<std::size_t>(v)]);
    int comp = aux_comp[static_cast<std::size_t>(v)];
    if (comp != -1) ear.via_components.push_back(comp);
  }
  std::reverse(ear.ear_edges.begin(), ear.ear_edges.end());
  std::reverse(ear.via_components.begin(), ear.via_components.end());

  // Witness path: shortest r -> head inside C0.
  ear.witness_path = bfs_path(g, c0.edges, {ear.r}, {ear.head}, {});
  require(!ear.witness_path.empty(), Err::Internal, "no witness path inside the component");

  // Certify a release condition (a)-(d).
  int units = 0, white_count = 0;
  bool white_not_r = false;
  EdgeSet wedges;
  for (std::size_t i = 0; i + 1 < ear.witness_path.size(); ++i) {
    EdgeId e = cover_edge_between(g, h.edges, ear.witness_path[i], ear.witness_path[i + 1]);
    set_add(wedges, e);
    if (g.edge(e).weight == 1) ++units;
  }
  for (VertexId v : ear.witness_path)
    if (set_contains(whites, v)) {
      ++white_count;
      if (v != ear.r) white_not_r = true;
    }
  bool head_extra_unit = false;
  for (EdgeId e : g.incident(ear.head))
    if (set_contains(h.edges, e) && !set_contains(wedges, e) && g.edge(e).weight == 1)
      head_extra_unit = true;
  if (white_not_r)
    ear.condition = 'a';
  else if (white_count == 1 && units >= 3)
    ear.condition = 'b';
  else if (white_count == 1 && units == 2 && head_extra_unit)
    ear.condition = 'c';
  else if (white_count == 1 && units == 2 && g.edge(ear.bridge).weight == 0)
    ear.condition = 'd';
  else
    fail(Err::NoPseudoEar, "witness path releases no credit (structuredness violation)");
  return ear;
}

std::pair<TwoEdgeCover, CreditLedger> apply_pseudo_ear(const MapInstance& inst,
                                                       const TwoEdgeCover& h,
                                                       const CreditLedger& ledger,
                                                       const PseudoEar& ear) {
  const Graph& g = inst.graph;
  EdgeSet edges = h.edges;
  for (EdgeId e : ear.ear_edges) {
    require(g.edge(e).weight == 1, Err::Internal, "ear edges are unit edges");
    set_add(edges, e);
  }
  TwoEdgeCover out = make_cover(inst, std::move(edges), h.provenance);

  // Entities that survive keep their credit; everything absorbed into the new
  // block (plus the merged components' c-credits) funds the ear and the new
  // component credit.
  const auto& old_comps = h.decomp.components;
  std::vector<bool> merged(old_comps.size(), false);
  merged[static_cast<std::size_t>(ear.comp0)] = true;
  for (int ci : ear.via_components) merged[static_cast<std::size_t>(ci)] = true;

  int new_comp = out.decomp.component_of(ear.r);
  const Component& nc = out.decomp.components[static_cast<std::size_t>(new_comp)];
  int new_block = -1;
  for (std::size_t j = 0; j < nc.blocks.size(); ++j)
    if (set_contains(nc.blocks[j].vertices, ear.r)) new_block = static_cast<int>(j);
  require(new_block >= 0, Err::Internal, "bridge endpoint left every block");

  std::map<VertexSet, std::pair<int, int>> new_block_at;
  for (std::size_t i = 0; i < out.decomp.components.size(); ++i)
    for (std::size_t j = 0; j < out.decomp.components[i].blocks.size(); ++j)
      new_block_at[out.decomp.components[i].blocks[j].vertices] = {static_cast<int>(i),
                                                                   static_cast<int>(j)};
  VertexSet new_blacks;
  for (const Component& c : out.decomp.components)
    for (VertexId v : c.black_vertices) set_add(new_blacks, v);

  CreditLedger next;
  next.component_credit.assign(out.decomp.components.size(), rat(0));
  for (const Component& c : out.decomp.components)
    next.block_credit.emplace_back(c.blocks.size(), rat(0));

  Rational pool = rat(0);
  for (std::size_t i = 0; i < old_comps.size(); ++i) {
    const Component& oc = old_comps[i];
    if (merged[i]) {
      pool += ledger.component_credit[i];
    } else {
      int ni = out.decomp.component_of(oc.vertices.front());
      next.component_credit[static_cast<std::size_t>(ni)] = ledger.component_credit[i];
    }
    for (std::size_t j = 0; j < oc.blocks.size(); ++j) {
      const Block& ob = oc.blocks[j];
      auto it = new_block_at.find(ob.vertices);
      bool is_start = static_cast<int>(i) == ear.comp0 && static_cast<int>(j) == ear.block;
      if (is_start) {
        next.block_credit[static_cast<std::size_t>(new_comp)][static_cast<std::size_t>(new_block)] =
            ledger.block_credit[i][j];
      } else if (it != new_block_at.end()) {
        next.block_credit[static_cast<std::size_t>(it->second.first)]
                         [static_cast<std::size_t>(it->second.second)] = ledger.block_credit[i][j];
      } else {
        require(merged[i], Err::Internal, "an untouched component lost a block");
        pool += ledger.block_credit[i][j];
      }
    }
    for (VertexId v : oc.black_vertices) {
      Rational cr = ledger.black_credit.at(v);
      if (set_contains(new_blacks, v))
        next.black_credit[v] = cr;
      else
        pool += cr;  // whitened by the new cycle
    }
  }
  Rational spent = rat(static_cast<long long>(ear.ear_edges.size()));
  Rational comp_credit = pool - spent;
  require(comp_credit >= rat(1), Err::CreditDeficit,
          "pseudo-ear left component credit " + to_string(comp_credit));
  next.component_credit[static_cast<std::size_t>(new_comp)] = comp_credit;

  require(next.total() == ledger.total() - spent, Err::Internal, "credit minted or lost");
  check_credit_invariant(inst, out, next);
  return {std::move(out), std::move(next)};
}

BridgelessResult cover_all_bridges(const MapInstance& inst, const TwoEdgeCover& canonical) {
  require(is_canonical(inst, canonical), Err::Internal,
          "cover_all_bridges requires a canonical input");
  int d2_weight = canonical.weight(inst.graph);
  TwoEdgeCover cur = canonical;
  CreditLedger led = init_credits(inst, cur);
  int initial_bridges = 0;
  for (const Component& c : cur.decomp.components)
    initial_bridges += static_cast<int>(c.bridges.size());
  BridgelessResult res;
  int rounds = 0;
  while (!cur.decomp.bridgeless()) {
    require(rounds++ <= initial_bridges, Err::Internal,
            "bridge covering exceeded the bridge budget");
    int comp0 = -1, block = -1;
    for (std::size_t i = 0; i < cur.decomp.components.size() && comp0 == -1; ++i) {
      const Component& c = cur.decomp.components[i];
      if (!c.complex) continue;
      for (std::size_t j = 0; j < c.blocks.size(); ++j)
        if (c.blocks[j].pendant) {
          comp0 = static_cast<int>(i);
          block = static_cast<int>(j);
          break;
        }
    }
    require(comp0 != -1, Err::Internal, "complex component without a pendant block");
    PseudoEar ear = find_pseudo_ear(inst, cur, comp0, block);
    auto [next, nled] = apply_pseudo_ear(inst, cur, led, ear);
    cur = std::move(next);
    led = std::move(nled);
    ++res.pseudo_ears;
  }
  cur.provenance = CoverProvenance::Bridgeless;

  // small components of the output are small components of the input
  for (const Component& c : cur.decomp.components) {
    if (c.size_class != SizeClass::Small) continue;
    bool found = false;
    for (const Component& oc : canonical.decomp.components)
      if (oc.vertices == c.vertices && oc.size_class == SizeClass::Small) found = true;
    require(found, Err::Internal, "a small component appeared during bridge covering");
  }
  require(economical_holds(inst, cur, d2_weight), Err::CreditDeficit,
          "bridgeless cover is not economical");

  for (std::size_t i = 0; i < cur.decomp.components.size(); ++i) {
    Rational credit = led.component_credit[i];
    for (const Rational& b : led.block_credit[i]) credit += b;
    res.component_credits.push_back(credit);
  }
  res.cover = std::move(cur);
  return res;
}

bool economical_holds(const MapInstance& inst, const TwoEdgeCover& h, int d2_weight) {
  long long nl = h.decomp.count(SizeClass::Large);
  long long nm = h.decomp.count(SizeClass::Medium);
  long long ns = h.decomp.count(SizeClass::Small);
  Rational lhs = rat(h.weight(inst.graph));
  Rational rhs =
      rat(13, 8) * rat(d2_weight) - rat(2) * rat(nl) - rat(15, 8) * rat(nm) - rat(5, 4) * rat(ns);
  return lhs <= rhs;
}

}  // namespace map2ec
