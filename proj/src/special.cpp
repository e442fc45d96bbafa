#include "map2ec/special.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace map2ec {

Rational credit_minimum(SizeClass c) {
  switch (c) {
    case SizeClass::Small: return rat(5, 4);
    case SizeClass::Medium: return rat(15, 8);
    case SizeClass::Large: return rat(2);
  }
  return rat(2);
}

CoverState make_state(const MapInstance& inst, BridgelessResult&& bridgeless, int d2_weight) {
  CoverState s;
  s.cover = std::move(bridgeless.cover);
  s.credits = std::move(bridgeless.component_credits);
  s.d2_weight = d2_weight;
  check_state(inst, s);
  return s;
}

void check_state(const MapInstance& inst, const CoverState& s) {
  require(s.cover.decomp.bridgeless(), Err::Internal, "cover state must be bridgeless");
  require(s.credits.size() == s.cover.decomp.components.size(), Err::Internal,
          "credits misaligned with components");
  for (EdgeId z : inst.zero_edges)
    require(set_contains(s.cover.edges, z), Err::Internal, "cover state lost a zero edge");
  for (std::size_t i = 0; i < s.credits.size(); ++i) {
    const Component& c = s.cover.decomp.components[i];
    Rational need = s.glue_phase
                        ? (c.size_class == SizeClass::Small ? rat(4, 3) : rat(2))
                        : credit_minimum(c.size_class);
    require(s.credits[i] >= need, Err::CreditDeficit,
            "component at vertex " + std::to_string(c.vertices.front()) + " holds " +
                to_string(s.credits[i]) + " < " + to_string(need));
  }
  if (!s.glue_phase)
    require(economical_holds(inst, s.cover, s.d2_weight), Err::CreditDeficit,
            "economical inequality violated");
}

namespace {

CoverState rebuild_state(const MapInstance& inst, const CoverState& old, EdgeSet new_edges,
                         const std::vector<std::pair<VertexId, Rational>>& fresh) {
  CoverState s;
  s.d2_weight = old.d2_weight;
  s.glue_phase = old.glue_phase;
  s.cover = make_cover(inst, std::move(new_edges), old.cover.provenance);
  s.credits.assign(s.cover.decomp.components.size(), rat(-1));
  for (const auto& [rep, cr] : fresh)
    s.credits[static_cast<std::size_t>(s.cover.decomp.component_of(rep))] = cr;
  std::map<VertexSet, Rational> carry;
  for (std::size_t i = 0; i < old.cover.decomp.components.size(); ++i)
    carry[old.cover.decomp.components[i].vertices] = old.credits[i];
  for (std::size_t i = 0; i < s.credits.size(); ++i) {
    if (s.credits[i] >= rat(0)) continue;
    auto it = carry.find(s.cover.decomp.components[i].vertices);
    require(it != carry.end(), Err::Internal, "merge produced an unaccounted component");
    s.credits[i] = it->second;
  }
  check_state(inst, s);
  return s;
}

// ---- disjoint connector paths (backtracking with reachability pruning) ----

struct PathFinder {
  const Graph& g;
  long long cap;
  long long steps = 0;
  bool capped = false;
  std::map<VertexId, std::vector<std::pair<VertexId, EdgeId>>> adj;

  PathFinder(const Graph& gr, long long step_cap) : g(gr), cap(step_cap) {
    for (VertexId v : g.vertices()) adj[v];
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      adj[ed.u].emplace_back(ed.v, e);
      adj[ed.v].emplace_back(ed.u, e);
    }
    for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
  }

  std::vector<std::pair<VertexId, VertexId>> pairs;
  VertexSet banned;     // never usable at all
  VertexSet terminals;  // usable only as endpoints
  VertexSet used;       // interiors of committed paths
  EdgeSet used_edges;
  std::vector<std::vector<EdgeId>> paths;

  bool reachable(VertexId s, VertexId t) const {
    if (s == t) return true;
    VertexSet seen{s};
    std::deque<VertexId> q{s};
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      auto it = adj.find(v);
      if (it == adj.end()) continue;
      for (auto [w, e] : it->second) {
        if (set_contains(used_edges, e)) continue;
        if (w == t) return true;
        if (set_contains(banned, w) || set_contains(terminals, w) || set_contains(used, w) ||
            set_contains(seen, w))
          continue;
        set_add(seen, w);
        q.push_back(w);
      }
    }
    return false;
  }

  bool feasible_from(std::size_t i) const {
    for (std::size_t j = i; j < pairs.size(); ++j)
      if (!reachable(pairs[j].first, pairs[j].second)) return false;
    return true;
  }

  bool solve_pair(std::size_t i) {
    if (i == pairs.size()) return true;
    if (!feasible_from(i)) return false;
    if (pairs[i].first == pairs[i].second) return solve_pair(i + 1);
    return extend(i, pairs[i].first);
  }

  bool extend(std::size_t i, VertexId at) {
    auto it = adj.find(at);
    if (it == adj.end()) return false;
    for (auto [w, e] : it->second) {
      if (cap && ++steps > cap) {
        capped = true;
        return false;
      }
      if (set_contains(used_edges, e)) continue;
      if (w == pairs[i].second) {
        paths[i].push_back(e);
        set_add(used_edges, e);
        if (solve_pair(i + 1)) return true;
        set_remove(used_edges, e);
        paths[i].pop_back();
        if (capped) return false;
        continue;
      }
      if (set_contains(banned, w) || set_contains(terminals, w) || set_contains(used, w)) continue;
      paths[i].push_back(e);
      set_add(used_edges, e);
      set_add(used, w);
      if (extend(i, w)) return true;
      set_remove(used, w);
      set_remove(used_edges, e);
      paths[i].pop_back();
      if (capped) return false;
    }
    return false;
  }

  std::optional<std::vector<std::vector<EdgeId>>> run(
      std::vector<std::pair<VertexId, VertexId>> prs, VertexSet banned_interiors,
      EdgeSet reserved_edges) {
    pairs = std::move(prs);
    banned = std::move(banned_interiors);
    used_edges = std::move(reserved_edges);
    used.clear();
    terminals.clear();
    for (auto [s, t] : pairs) {
      set_add(terminals, s);
      set_add(terminals, t);
    }
    paths.assign(pairs.size(), {});
    if (!solve_pair(0)) return std::nullopt;
    return paths;
  }
};

std::vector<VertexId> walk_edges(const Graph& g, VertexId from, const std::vector<EdgeId>& edges) {
  std::vector<VertexId> verts{from};
  for (EdgeId e : edges) verts.push_back(g.edge(e).other(verts.back()));
  return verts;
}

}  // namespace

std::optional<CycleWitness> cycle_through_edges(const Graph& g, const EdgeSet& f,
                                                long long step_cap) {
  require(!f.empty() && f.size() <= 6, Err::Internal, "cycle_through_edges takes 1..6 edges");
  std::map<VertexId, std::vector<EdgeId>> finc;
  for (EdgeId e : f) {
    finc[g.edge(e).u].push_back(e);
    finc[g.edge(e).v].push_back(e);
    if (finc[g.edge(e).u].size() > 2 || finc[g.edge(e).v].size() > 2) return std::nullopt;
  }
  // Forced chains: maximal paths within f. If f closes a cycle by itself, it
  // must already be the whole answer.
  struct Chain {
    std::vector<VertexId> verts;
    std::vector<EdgeId> edges;
  };
  std::vector<Chain> chains;
  EdgeSet seen;
  for (EdgeId e0 : f) {
    if (set_contains(seen, e0)) continue;
    Chain ch;
    ch.edges = {e0};
    set_add(seen, e0);
    ch.verts = {g.edge(e0).u, g.edge(e0).v};
    for (int dir = 0; dir < 2; ++dir) {
      bool grown = true;
      while (grown) {
        grown = false;
        VertexId tip = dir == 0 ? ch.verts.back() : ch.verts.front();
        for (EdgeId e : finc[tip]) {
          if (set_contains(seen, e)) continue;
          VertexId nxt = g.edge(e).other(tip);
          VertexId other_tip = dir == 0 ? ch.verts.front() : ch.verts.back();
          if (nxt == other_tip) {
            set_add(seen, e);
            if (seen.size() == f.size()) {
              CycleWitness w;
              w.nodes = ch.verts;
              w.edges = ch.edges;
              if (dir == 0)
                w.edges.push_back(e);
              else
                w.edges.insert(w.edges.begin(), e);
              return w;
            }
            return std::nullopt;  // f contains a proper sub-cycle
          }
          if (std::find(ch.verts.begin(), ch.verts.end(), nxt) != ch.verts.end())
            return std::nullopt;
          set_add(seen, e);
          if (dir == 0) {
            ch.verts.push_back(nxt);
            ch.edges.push_back(e);
          } else {
            ch.verts.insert(ch.verts.begin(), nxt);
            ch.edges.insert(ch.edges.begin(), e);
          }
          grown = true;
          break;
        }
      }
    }
    chains.push_back(std::move(ch));
  }

  VertexSet chain_verts;
  for (const Chain& c : chains)
    for (VertexId v : c.verts) set_add(chain_verts, v);

  std::size_t t = chains.size();
  std::vector<std::size_t> order(t);
  std::vector<int> flip(t, 0);
  PathFinder pf(g, step_cap);

  auto attempt = [&]() -> std::optional<CycleWitness> {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (std::size_t i = 0; i < t; ++i) {
      const Chain& a = chains[order[i]];
      const Chain& b = chains[order[(i + 1) % t]];
      VertexId a_end = flip[order[i]] ? a.verts.front() : a.verts.back();
      VertexId b_start = flip[order[(i + 1) % t]] ? b.verts.back() : b.verts.front();
      pairs.emplace_back(a_end, b_start);
    }
    auto sol = pf.run(pairs, chain_verts, f);
    if (!sol) return std::nullopt;
    CycleWitness w;
    for (std::size_t i = 0; i < t; ++i) {
      std::vector<EdgeId> edges = chains[order[i]].edges;
      if (flip[order[i]]) std::reverse(edges.begin(), edges.end());
      for (EdgeId e : edges) w.edges.push_back(e);
      for (EdgeId e : (*sol)[i]) w.edges.push_back(e);
    }
    VertexId start = flip[order[0]] ? chains[order[0]].verts.back() : chains[order[0]].verts.front();
    w.nodes = walk_edges(g, start, w.edges);
    require(w.nodes.front() == w.nodes.back(), Err::Internal, "assembled walk is not closed");
    w.nodes.pop_back();
    return w;
  };

  std::vector<std::size_t> rest;
  for (std::size_t i = 1; i < t; ++i) rest.push_back(i);
  do {
    order[0] = 0;
    for (std::size_t i = 1; i < t; ++i) order[i] = rest[i - 1];
    int combos = 1 << (t - 1);
    for (int mask = 0; mask < combos; ++mask) {
      flip[0] = 0;
      for (std::size_t i = 1; i < t; ++i) flip[order[i]] = (mask >> (i - 1)) & 1;
      if (auto w = attempt()) return w;
      if (pf.capped) return std::nullopt;
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return std::nullopt;
}

std::vector<PortalPath> spanning_paths(const Graph& g, const VertexSet& verts, int weight) {
  EdgeSet inside;
  for (VertexId v : verts)
    for (EdgeId e : g.incident(v))
      if (set_contains(verts, g.edge(e).other(v))) set_add(inside, e);
  EdgeSet zeros;
  for (EdgeId e : inside)
    if (g.edge(e).weight == 0) set_add(zeros, e);

  std::vector<PortalPath> out;
  std::vector<EdgeId> path;
  VertexSet on;
  std::function<void(VertexId, VertexId)> rec = [&](VertexId start, VertexId at) {
    if (on.size() == verts.size()) {
      EdgeSet es = sorted_unique(path);
      if (subgraph_weight(g, es) != weight) return;
      for (EdgeId z : zeros)
        if (!set_contains(es, z)) return;
      if (start > at) return;  // canonical orientation
      out.push_back({start, at, es});
      return;
    }
    for (EdgeId e : g.incident(at)) {
      if (!set_contains(inside, e)) continue;
      VertexId w = g.edge(e).other(at);
      if (set_contains(on, w)) continue;
      path.push_back(e);
      set_add(on, w);
      rec(start, w);
      set_remove(on, w);
      path.pop_back();
    }
  };
  for (VertexId s : verts) {
    on = {s};
    path.clear();
    rec(s, s);
  }
  std::sort(out.begin(), out.end(), [](const PortalPath& a, const PortalPath& b) {
    return std::tie(a.a, a.b, a.edges) < std::tie(b.a, b.b, b.edges);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const PortalPath& a, const PortalPath& b) {
                          return a.a == b.a && a.b == b.b && a.edges == b.edges;
                        }),
            out.end());
  return out;
}

namespace {

// Contracted graph G/H; node names are component representative vertices.
struct GHView {
  Graph gh;
  ContractionMap cm;
};

GHView make_gh(const MapInstance& inst, const TwoEdgeCover& cover) {
  std::vector<VertexSet> parts;
  for (const Component& c : cover.decomp.components) parts.push_back(c.vertices);
  GHView v;
  auto [gh, cm] = contract(inst.graph, parts);
  v.gh = std::move(gh);
  v.cm = std::move(cm);
  return v;
}

VertexId endpoint_in(const MapInstance& inst, const GHView& gh, const Component& c, EdgeId ghe) {
  const Edge& orig = inst.graph.edge(gh.cm.edge_to_original[static_cast<std::size_t>(ghe)]);
  if (set_contains(c.vertices, orig.u)) return orig.u;
  require(set_contains(c.vertices, orig.v), Err::Internal, "gh edge not incident to component");
  return orig.v;
}

std::vector<VertexSet> biconnected_vertex_sets(const Graph& g) {
  std::vector<VertexSet> out;
  std::map<VertexId, int> disc, low;
  int timer = 0;
  std::vector<std::pair<VertexId, VertexId>> stack_edges;
  auto emit = [&](VertexId u, VertexId v) {
    VertexSet comp;
    while (!stack_edges.empty()) {
      auto [a, b] = stack_edges.back();
      stack_edges.pop_back();
      set_add(comp, a);
      set_add(comp, b);
      if (a == u && b == v) break;
    }
    if (comp.size() >= 2) out.push_back(std::move(comp));
  };
  std::function<void(VertexId, VertexId, EdgeId)> dfs = [&](VertexId v, VertexId parent,
                                                            EdgeId parent_edge) {
    disc[v] = low[v] = timer++;
    for (EdgeId e : g.incident(v)) {
      VertexId w = g.edge(e).other(v);
      if (e == parent_edge) continue;
      if (!disc.count(w)) {
        stack_edges.emplace_back(v, w);
        dfs(w, v, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) emit(v, w);
      } else if (disc[w] < disc[v]) {
        low[v] = std::min(low[v], disc[w]);
        stack_edges.emplace_back(v, w);
      }
    }
    (void)parent;
  };
  for (VertexId v : g.vertices())
    if (!disc.count(v)) dfs(v, -1, -1);
  return out;
}

bool same_bcc(const std::vector<VertexSet>& bccs, VertexId a, VertexId b) {
  for (const VertexSet& s : bccs)
    if (set_contains(s, a) && set_contains(s, b)) return true;
  return false;
}

struct GhPath {
  std::vector<VertexId> nodes;
  std::vector<EdgeId> gh_edges;
};

std::optional<GhPath> gh_bfs(const Graph& gh, VertexId from, VertexId to, const VertexSet& banned) {
  if (set_contains(banned, from) || set_contains(banned, to)) return std::nullopt;
  std::map<VertexId, std::pair<VertexId, EdgeId>> par;
  std::deque<VertexId> q{from};
  par[from] = {from, -1};
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    if (v == to) break;
    for (EdgeId e : gh.incident(v)) {
      VertexId w = gh.edge(e).other(v);
      if (set_contains(banned, w) || par.count(w)) continue;
      par[w] = {v, e};
      q.push_back(w);
    }
  }
  if (!par.count(to)) return std::nullopt;
  GhPath p;
  p.nodes = {to};
  while (par[p.nodes.back()].first != p.nodes.back()) {
    p.gh_edges.push_back(par[p.nodes.back()].second);
    p.nodes.push_back(par[p.nodes.back()].first);
  }
  std::reverse(p.nodes.begin(), p.nodes.end());
  std::reverse(p.gh_edges.begin(), p.gh_edges.end());
  return p;
}

std::map<VertexId, int> gh_components_without(const Graph& gh, const VertexSet& removed) {
  std::map<VertexId, int> cid;
  int next = 0;
  for (VertexId root : gh.vertices()) {
    if (set_contains(removed, root) || cid.count(root)) continue;
    std::deque<VertexId> q{root};
    cid[root] = next;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (EdgeId e : gh.incident(v)) {
        VertexId w = gh.edge(e).other(v);
        if (set_contains(removed, w) || cid.count(w)) continue;
        cid[w] = next;
        q.push_back(w);
      }
    }
    ++next;
  }
  return cid;
}

struct PortalEdges {
  PortalPath portal;
  std::vector<EdgeId> at_a;  // crossing gh edges attaching at portal.a
  std::vector<EdgeId> at_b;
};

std::vector<PortalEdges> portal_edges_for(const MapInstance& inst, const GHView& gh,
                                          const Component& c) {
  std::vector<PortalEdges> out;
  if (c.size_class == SizeClass::Large) return out;
  std::map<VertexId, std::vector<EdgeId>> crossing_at;
  VertexId repv = c.vertices.front();
  for (EdgeId e : gh.gh.incident(repv)) crossing_at[endpoint_in(inst, gh, c, e)].push_back(e);
  for (const PortalPath& p : spanning_paths(inst.graph, c.vertices, c.weight - 1)) {
    PortalEdges pe;
    pe.portal = p;
    if (crossing_at.count(p.a)) pe.at_a = crossing_at[p.a];
    if (crossing_at.count(p.b)) pe.at_b = crossing_at[p.b];
    if (!pe.at_a.empty() && !pe.at_b.empty()) out.push_back(std::move(pe));
  }
  return out;
}

GoodCycle witness_to_good_cycle(const TwoEdgeCover& cover, const GHView& gh,
                                const CycleWitness& w,
                                std::vector<GoodCycle::Shortcut> shortcuts,
                                GoodCycleFlavor flavor) {
  GoodCycle gc;
  gc.flavor = flavor;
  gc.shortcuts = std::move(shortcuts);
  for (VertexId node : w.nodes) gc.nodes.push_back(cover.decomp.component_of(node));
  for (EdgeId e : w.edges) gc.edges.push_back(gh.cm.edge_to_original[static_cast<std::size_t>(e)]);
  return gc;
}

}  // namespace

std::optional<GoodCycle> find_good_cycle(const MapInstance& inst, const CoverState& s,
                                         const SearchLimits& lim) {
  const TwoEdgeCover& cover = s.cover;
  const auto& comps = cover.decomp.components;
  if (comps.size() < 2) return std::nullopt;
  GHView gh = make_gh(inst, cover);
  std::vector<VertexSet> bccs = biconnected_vertex_sets(gh.gh);

  // (i) two large nodes on a common cycle
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].size_class != SizeClass::Large) continue;
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[j].size_class != SizeClass::Large) continue;
      VertexId a = comps[i].vertices.front(), b = comps[j].vertices.front();
      if (!same_bcc(bccs, a, b)) continue;
      PathFinder pf(gh.gh, lim.path_steps);
      auto sol = pf.run({{a, b}, {a, b}}, {}, {});
      if (!sol) continue;
      CycleWitness w;
      w.edges = (*sol)[0];
      std::vector<EdgeId> back = (*sol)[1];
      std::reverse(back.begin(), back.end());
      for (EdgeId e : back) w.edges.push_back(e);
      w.nodes = walk_edges(gh.gh, a, w.edges);
      w.nodes.pop_back();
      return witness_to_good_cycle(cover, gh, w, {}, GoodCycleFlavor::TwoLarge);
    }
  }

  std::vector<std::vector<PortalEdges>> portals(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i)
    portals[i] = portal_edges_for(inst, gh, comps[i]);

  // (ii) two shortcut nodes
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (portals[i].empty()) continue;
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (portals[j].empty()) continue;
      VertexId ri = comps[i].vertices.front(), rj = comps[j].vertices.front();
      if (!same_bcc(bccs, ri, rj)) continue;
      std::map<VertexId, int> cid =
          gh_components_without(gh.gh, sorted_unique({ri, rj}));
      for (const PortalEdges& pi : portals[i])
        for (EdgeId e1 : pi.at_a)
          for (EdgeId e2 : pi.at_b) {
            if (e1 == e2) continue;
            for (const PortalEdges& pj : portals[j])
              for (EdgeId f1 : pj.at_a)
                for (EdgeId f2 : pj.at_b) {
                  if (f1 == f2) continue;
                  EdgeSet F = sorted_unique({e1, e2, f1, f2});
                  if (F.size() < 3) continue;
                  VertexId X = gh.gh.edge(e1).other(ri), Y = gh.gh.edge(e2).other(ri);
                  VertexId Z = gh.gh.edge(f1).other(rj), W = gh.gh.edge(f2).other(rj);
                  if (X != rj && Y != rj && Z != ri && W != ri && cid.count(X) && cid.count(Y) &&
                      cid.count(Z) && cid.count(W)) {
                    bool ok1 = cid[X] == cid[Z] && cid[Y] == cid[W];
                    bool ok2 = cid[X] == cid[W] && cid[Y] == cid[Z];
                    if (!ok1 && !ok2) continue;
                  }
                  auto w = cycle_through_edges(gh.gh, F, lim.path_steps);
                  if (!w) continue;
                  std::vector<GoodCycle::Shortcut> sc = {{static_cast<int>(i), pi.portal.edges},
                                                         {static_cast<int>(j), pj.portal.edges}};
                  return witness_to_good_cycle(cover, gh, *w, std::move(sc),
                                               GoodCycleFlavor::TwoShortcuts);
                }
          }
    }
  }

  // (iii) one large node plus one shortcut node
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (portals[i].empty()) continue;
    VertexId ri = comps[i].vertices.front();
    std::map<VertexId, int> cid = gh_components_without(gh.gh, {ri});
    for (std::size_t j = 0; j < comps.size(); ++j) {
      if (comps[j].size_class != SizeClass::Large) continue;
      VertexId l = comps[j].vertices.front();
      if (!same_bcc(bccs, ri, l)) continue;
      for (const PortalEdges& pi : portals[i])
        for (EdgeId e1 : pi.at_a)
          for (EdgeId e2 : pi.at_b) {
            if (e1 == e2) continue;
            VertexId X = gh.gh.edge(e1).other(ri), Y = gh.gh.edge(e2).other(ri);
            std::vector<GoodCycle::Shortcut> sc = {{static_cast<int>(i), pi.portal.edges}};
            if (X == l && Y == l) {
              CycleWitness w;
              w.nodes = {ri, l};
              w.edges = {e1, e2};
              return witness_to_good_cycle(cover, gh, w, std::move(sc),
                                           GoodCycleFlavor::LargePlusShortcut);
            }
            if (X == Y) continue;  // a simple cycle cannot revisit the node
            if (cid.count(X) && cid.count(Y) && cid.count(l) &&
                !(cid[X] == cid[l] && cid[Y] == cid[l]))
              continue;
            std::vector<std::pair<VertexId, VertexId>> prs;
            if (X != l) prs.emplace_back(X, l);
            if (Y != l) prs.emplace_back(l, Y);
            PathFinder pf(gh.gh, lim.path_steps);
            auto sol = pf.run(prs, {ri}, sorted_unique({e1, e2}));
            if (!sol) continue;
            CycleWitness w;
            w.edges = {e1};
            std::size_t pidx = 0;
            if (X != l)
              for (EdgeId e : (*sol)[pidx++]) w.edges.push_back(e);
            if (Y != l) {
              for (EdgeId e : (*sol)[pidx]) w.edges.push_back(e);
            }
            w.edges.push_back(e2);
            w.nodes = walk_edges(gh.gh, ri, w.edges);
            require(w.nodes.front() == w.nodes.back(), Err::Internal, "shortcut cycle not closed");
            w.nodes.pop_back();
            return witness_to_good_cycle(cover, gh, w, std::move(sc),
                                         GoodCycleFlavor::LargePlusShortcut);
          }
    }
  }
  return std::nullopt;
}

CoverState merge_good_cycle(const MapInstance& inst, const CoverState& s, const GoodCycle& gc) {
  const auto& comps = s.cover.decomp.components;
  EdgeSet edges = s.cover.edges;
  for (const GoodCycle::Shortcut& sc : gc.shortcuts) {
    edges = set_minus(edges, comps[static_cast<std::size_t>(sc.node)].edges);
    edges = set_union(edges, sc.replacement);
  }
  for (EdgeId e : gc.edges) set_add(edges, e);

  int w0 = subgraph_weight(inst.graph, s.cover.edges);
  int w1 = subgraph_weight(inst.graph, edges);
  int savings = static_cast<int>(gc.shortcuts.size());
  require(w1 - w0 == subgraph_weight(inst.graph, sorted_unique(gc.edges)) - savings, Err::Internal,
          "good-cycle savings accounting is off");

  Rational credit = rat(savings) - rat(static_cast<long long>(gc.edges.size()));
  for (int node : sorted_unique(gc.nodes)) credit += s.credits[static_cast<std::size_t>(node)];
  require(credit >= rat(2), Err::CreditDeficit, "good-cycle merge left credit " + to_string(credit));
  std::size_t before = comps.size();
  CoverState next = rebuild_state(
      inst, s, std::move(edges),
      {{comps[static_cast<std::size_t>(gc.nodes.front())].vertices.front(), credit}});
  require(next.cover.decomp.components.size() < before, Err::Internal,
          "good-cycle merge did not reduce the component count");
  return next;
}

std::optional<AugPath3> find_open_3aug(const MapInstance& inst, const CoverState& s) {
  const auto& comps = s.cover.decomp.components;
  GHView gh = make_gh(inst, s.cover);
  std::vector<std::vector<PortalPath>> pp(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (comps[i].size_class == SizeClass::Small)
      pp[i] = spanning_paths(inst.graph, comps[i].vertices, comps[i].weight - 1);

  for (EdgeId ge = 0; ge < gh.gh.edge_count(); ++ge) {
    int ci = s.cover.decomp.component_of(gh.gh.edge(ge).u);
    int cj = s.cover.decomp.component_of(gh.gh.edge(ge).v);
    for (int flipd = 0; flipd < 2; ++flipd) {
      int x2 = flipd ? cj : ci;
      int x3 = flipd ? ci : cj;
      auto& pp2 = pp[static_cast<std::size_t>(x2)];
      auto& pp3 = pp[static_cast<std::size_t>(x3)];
      if (pp2.empty() || pp3.empty()) continue;
      const Component& c2 = comps[static_cast<std::size_t>(x2)];
      const Component& c3 = comps[static_cast<std::size_t>(x3)];
      VertexId q = endpoint_in(inst, gh, c2, ge);
      VertexId r = endpoint_in(inst, gh, c3, ge);
      for (const PortalPath& p2 : pp2) {
        if (p2.a != q && p2.b != q) continue;
        VertexId pv = p2.a == q ? p2.b : p2.a;
        for (EdgeId e1 : gh.gh.incident(c2.vertices.front())) {
          if (e1 == ge || endpoint_in(inst, gh, c2, e1) != pv) continue;
          int x1 = s.cover.decomp.component_of(gh.gh.edge(e1).other(c2.vertices.front()));
          if (x1 == x2 || x1 == x3) continue;
          for (const PortalPath& p3 : pp3) {
            if (p3.a != r && p3.b != r) continue;
            VertexId sv = p3.a == r ? p3.b : p3.a;
            for (EdgeId e3 : gh.gh.incident(c3.vertices.front())) {
              if (e3 == ge || endpoint_in(inst, gh, c3, e3) != sv) continue;
              int x4 = s.cover.decomp.component_of(gh.gh.edge(e3).other(c3.vertices.front()));
              if (x4 == x1 || x4 == x2 || x4 == x3) continue;
              AugPath3 p;
              p.x1 = x1;
              p.x2 = x2;
              p.x3 = x3;
              p.x4 = x4;
              p.e1 = gh.cm.edge_to_original[static_cast<std::size_t>(e1)];
              p.e2 = gh.cm.edge_to_original[static_cast<std::size_t>(ge)];
              p.e3 = gh.cm.edge_to_original[static_cast<std::size_t>(e3)];
              p.path2 = p2.edges;
              p.path3 = p3.edges;
              return p;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

CoverState merge_open_3aug(const MapInstance& inst, const CoverState& s, const AugPath3& p) {
  const auto& comps = s.cover.decomp.components;
  GHView gh = make_gh(inst, s.cover);
  auto rep = [&](int c) { return comps[static_cast<std::size_t>(c)].vertices.front(); };

  auto p1 = gh_bfs(gh.gh, rep(p.x1), rep(p.x3), {rep(p.x2)});
  require(p1.has_value(), Err::PathNotFound,
          "no x1->x3 path avoiding x2 (S_{3,4}-type separator present)");
  require(!set_contains(sorted_unique(p1->nodes), rep(p.x4)), Err::Internal,
          "x4 on P1 implies a good cycle that should have been merged");
  auto p2 = gh_bfs(gh.gh, rep(p.x4), rep(p.x2), sorted_unique({rep(p.x3), rep(p.x1)}));
  require(p2.has_value(), Err::PathNotFound,
          "no x4->x2 path avoiding x3 and x1 (S_{3,4}-type separator present)");
  require(set_intersect(sorted_unique(p1->nodes), sorted_unique(p2->nodes)).empty(), Err::Internal,
          "P1 and P2 intersect, a good cycle was missed");

  EdgeSet bought = sorted_unique({p.e1, p.e2, p.e3});
  for (EdgeId e : p1->gh_edges) set_add(bought, gh.cm.edge_to_original[static_cast<std::size_t>(e)]);
  for (EdgeId e : p2->gh_edges) set_add(bought, gh.cm.edge_to_original[static_cast<std::size_t>(e)]);

  EdgeSet edges = s.cover.edges;
  edges = set_minus(edges, comps[static_cast<std::size_t>(p.x2)].edges);
  edges = set_minus(edges, comps[static_cast<std::size_t>(p.x3)].edges);
  edges = set_union(edges, p.path2);
  edges = set_union(edges, p.path3);
  edges = set_union(edges, bought);

  std::vector<int> snodes{p.x1, p.x2, p.x3, p.x4};
  for (VertexId nd : p1->nodes) snodes.push_back(s.cover.decomp.component_of(nd));
  for (VertexId nd : p2->nodes) snodes.push_back(s.cover.decomp.component_of(nd));
  snodes = sorted_unique(snodes);
  Rational credit = rat(2) - rat(subgraph_weight(inst.graph, bought));
  for (int node : snodes) credit += s.credits[static_cast<std::size_t>(node)];
  require(credit >= rat(2), Err::CreditDeficit,
          "open 3-augmenting merge left credit " + to_string(credit));
  std::size_t before = comps.size();
  CoverState next = rebuild_state(inst, s, std::move(edges), {{rep(p.x1), credit}});
  require(next.cover.decomp.components.size() < before, Err::Internal,
          "3-augmenting merge did not reduce the component count");
  return next;
}

namespace {

// all simple cycles inside an induced vertex set with the exact unit weight
void enumerate_cycles(const Graph& g, const VertexSet& verts, int weight, bool spanning,
                      const std::function<bool(const EdgeSet&, const VertexSet&)>& visit) {
  EdgeSet inside;
  for (VertexId v : verts)
    for (EdgeId e : g.incident(v))
      if (set_contains(verts, g.edge(e).other(v))) set_add(inside, e);
  std::vector<EdgeId> path;
  VertexSet on;
  bool stop = false;
  std::function<void(VertexId, VertexId, int)> rec = [&](VertexId home, VertexId at, int w) {
    if (stop) return;
    for (EdgeId e : inside) {
      if (stop) return;
      if (!g.edge(e).touches(at)) continue;
      if (e <= path.front()) continue;  // canonical: lowest edge id first
      if (std::find(path.begin(), path.end(), e) != path.end()) continue;
      int nw = w + g.edge(e).weight;
      if (nw > weight) continue;
      VertexId to = g.edge(e).other(at);
      if (to == home) {
        if (path.size() >= 2 && nw == weight && (!spanning || on.size() == verts.size())) {
          EdgeSet cyc = sorted_unique(path);
          set_add(cyc, e);
          if (visit(cyc, on)) {
            stop = true;
            return;
          }
        }
        continue;
      }
      if (set_contains(on, to)) continue;
      path.push_back(e);
      set_add(on, to);
      rec(home, to, nw);
      set_remove(on, to);
      path.pop_back();
    }
  };
  for (EdgeId start : inside) {
    if (stop) return;
    const Edge& ed = g.edge(start);
    path = {start};
    on = sorted_unique({ed.u, ed.v});
    rec(ed.u, ed.v, ed.weight);
  }
}

}  // namespace

std::optional<SmallMerge> find_small_merge(const MapInstance& inst, const CoverState& s) {
  const auto& comps = s.cover.decomp.components;
  std::vector<int> smalls;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (comps[i].size_class == SizeClass::Small) smalls.push_back(static_cast<int>(i));
  for (std::size_t a = 0; a < smalls.size(); ++a)
    for (std::size_t b = a + 1; b < smalls.size(); ++b)
      for (std::size_t c = b + 1; c < smalls.size(); ++c) {
        VertexSet U = set_union(
            set_union(comps[static_cast<std::size_t>(smalls[a])].vertices,
                      comps[static_cast<std::size_t>(smalls[b])].vertices),
            comps[static_cast<std::size_t>(smalls[c])].vertices);
        EdgeSet zerosU;
        for (EdgeId z : inst.zero_edges)
          if (set_contains(U, inst.graph.edge(z).u)) set_add(zerosU, z);

        std::optional<SmallMerge> found;
        // small-to-medium: two disjoint spanning weight-3 cycles
        enumerate_cycles(inst.graph, U, 3, false, [&](const EdgeSet& c1, const VertexSet& v1) {
          VertexSet rest = set_minus(U, v1);
          if (rest.size() < 3) return false;
          bool done = false;
          enumerate_cycles(inst.graph, rest, 3, true, [&](const EdgeSet& c2, const VertexSet&) {
            EdgeSet both = set_union(c1, c2);
            for (EdgeId z : zerosU)
              if (!set_contains(both, z)) return false;
            SmallMerge m;
            m.s1 = smalls[a];
            m.s2 = smalls[b];
            m.s3 = smalls[c];
            m.cycle1 = c1;
            m.cycle2 = c2;
            m.to_large = false;
            found = m;
            done = true;
            return true;
          });
          return done;
        });
        if (found) return found;
        // small-to-large: one spanning weight-6 cycle
        enumerate_cycles(inst.graph, U, 6, true, [&](const EdgeSet& c1, const VertexSet&) {
          for (EdgeId z : zerosU)
            if (!set_contains(c1, z)) return false;
          SmallMerge m;
          m.s1 = smalls[a];
          m.s2 = smalls[b];
          m.s3 = smalls[c];
          m.cycle1 = c1;
          m.to_large = true;
          found = m;
          return true;
        });
        if (found) return found;
      }
  return std::nullopt;
}

CoverState apply_small_merge(const MapInstance& inst, const CoverState& s, const SmallMerge& m) {
  const auto& comps = s.cover.decomp.components;
  EdgeSet edges = s.cover.edges;
  for (int c : {m.s1, m.s2, m.s3})
    edges = set_minus(edges, comps[static_cast<std::size_t>(c)].edges);
  edges = set_union(edges, m.cycle1);
  edges = set_union(edges, m.cycle2);
  require(subgraph_weight(inst.graph, edges) == subgraph_weight(inst.graph, s.cover.edges),
          Err::Internal, "small merge must conserve weight");
  std::vector<std::pair<VertexId, Rational>> fresh;
  if (m.to_large) {
    fresh.emplace_back(inst.graph.edge(m.cycle1.front()).u, rat(15, 4));
  } else {
    fresh.emplace_back(inst.graph.edge(m.cycle1.front()).u, rat(15, 8));
    fresh.emplace_back(inst.graph.edge(m.cycle2.front()).u, rat(15, 8));
  }
  std::size_t before = comps.size();
  CoverState next = rebuild_state(inst, s, std::move(edges), fresh);
  require(next.cover.decomp.components.size() == before - (m.to_large ? 2 : 1), Err::Internal,
          "small merge changed the component count unexpectedly");
  return next;
}

namespace {

std::pair<std::vector<VertexId>, std::vector<EdgeId>> component_cycle(const Graph& g,
                                                                      const Component& c) {
  std::vector<VertexId> verts{c.vertices.front()};
  std::vector<EdgeId> edges;
  while (true) {
    VertexId at = verts.back();
    bool moved = false;
    for (EdgeId e : c.edges) {
      if (!g.edge(e).touches(at)) continue;
      if (!edges.empty() && e == edges.back()) continue;
      VertexId to = g.edge(e).other(at);
      if (to == verts.front() && edges.size() + 1 == c.edges.size()) {
        edges.push_back(e);
        return {verts, edges};
      }
      if (std::find(verts.begin(), verts.end(), to) != verts.end()) continue;
      verts.push_back(to);
      edges.push_back(e);
      moved = true;
      break;
    }
    require(moved, Err::Internal, "medium component is not a simple cycle");
  }
}

std::vector<EdgeId> outgoing_at(const MapInstance& inst, const Component& comp, VertexId v,
                                const VertexSet* part) {
  std::vector<EdgeId> out;
  for (EdgeId e : inst.graph.incident(v)) {
    VertexId w = inst.graph.edge(e).other(v);
    if (set_contains(comp.vertices, w)) continue;
    if (part && !set_contains(*part, w)) continue;
    out.push_back(e);
  }
  return out;
}

CoverState merge_via_outgoing_pair(const MapInstance& inst, const CoverState& s, int comp,
                                   EdgeId sold, EdgeId e1, EdgeId e2) {
  const auto& comps = s.cover.decomp.components;
  const Component& c = comps[static_cast<std::size_t>(comp)];
  GHView gh = make_gh(inst, s.cover);
  auto far_of = [&](EdgeId e) {
    VertexId w = inst.graph.edge(e).u;
    if (set_contains(c.vertices, w)) w = inst.graph.edge(e).v;
    return w;
  };
  int d1 = s.cover.decomp.component_of(far_of(e1));
  int d2 = s.cover.decomp.component_of(far_of(e2));

  EdgeSet bought = sorted_unique({e1, e2});
  std::vector<int> nodes{comp, d1, d2};
  if (d1 != d2) {
    auto path = gh_bfs(gh.gh, comps[static_cast<std::size_t>(d1)].vertices.front(),
                       comps[static_cast<std::size_t>(d2)].vertices.front(), {c.vertices.front()});
    require(path.has_value(), Err::CaseExhausted,
            "outgoing edges' components are separated by the medium component");
    for (EdgeId e : path->gh_edges)
      set_add(bought, gh.cm.edge_to_original[static_cast<std::size_t>(e)]);
    for (VertexId nd : path->nodes) nodes.push_back(s.cover.decomp.component_of(nd));
  }
  nodes = sorted_unique(nodes);

  EdgeSet edges = set_union(s.cover.edges, bought);
  set_remove(edges, sold);

  Rational credit = rat(1) - rat(subgraph_weight(inst.graph, bought));
  for (int nd : nodes) credit += s.credits[static_cast<std::size_t>(nd)];
  require(credit >= rat(2), Err::CreditDeficit,
          "medium elimination left credit " + to_string(credit));
  std::size_t before = comps.size();
  CoverState next = rebuild_state(inst, s, std::move(edges), {{c.vertices.front(), credit}});
  require(next.cover.decomp.components.size() < before, Err::Internal,
          "medium elimination did not reduce the component count");
  return next;
}

}  // namespace

CoverState eliminate_medium(const MapInstance& inst, const CoverState& s, int comp,
                            const SearchLimits& lim) {
  (void)lim;
  const auto& comps = s.cover.decomp.components;
  const Component& c = comps[static_cast<std::size_t>(comp)];
  require(c.size_class == SizeClass::Medium, Err::Internal, "eliminate_medium needs a medium");
  const Graph& g = inst.graph;

  VertexSet others = set_minus(g.vertices(), c.vertices);
  std::vector<VertexSet> parts = components_of_vertices(g, others);

  auto cycle = component_cycle(g, c);
  std::vector<EdgeId> unit_edges;
  for (EdgeId e : cycle.second)
    if (g.edge(e).weight == 1) unit_edges.push_back(e);

  if (parts.size() == 1) {
    for (EdgeId e : unit_edges) {
      auto o1 = outgoing_at(inst, c, g.edge(e).u, nullptr);
      auto o2 = outgoing_at(inst, c, g.edge(e).v, nullptr);
      if (!o1.empty() && !o2.empty())
        return merge_via_outgoing_pair(inst, s, comp, e, o1.front(), o2.front());
    }
    fail(Err::CaseExhausted,
         "non-separator medium without an outgoing unit-edge pair (a contractible was missed)");
  }

  std::vector<std::vector<int>> part_comps(parts.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (static_cast<int>(i) == comp) continue;
    VertexId rep = comps[i].vertices.front();
    for (std::size_t p = 0; p < parts.size(); ++p)
      if (set_contains(parts[p], rep)) part_comps[p].push_back(static_cast<int>(i));
  }

  // adjacent medium part
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (part_comps[p].size() != 1) continue;
    int cp = part_comps[p].front();
    if (comps[static_cast<std::size_t>(cp)].size_class != SizeClass::Medium) continue;
    const Component& cc = comps[static_cast<std::size_t>(cp)];
    auto ccycle = component_cycle(g, cc);
    for (EdgeId e : ccycle.second) {
      if (g.edge(e).weight != 1) continue;
      auto o1 = outgoing_at(inst, cc, g.edge(e).u, nullptr);
      auto o2 = outgoing_at(inst, cc, g.edge(e).v, nullptr);
      if (o1.empty() || o2.empty()) continue;
      EdgeSet edges = s.cover.edges;
      set_add(edges, o1.front());
      set_add(edges, o2.front());
      set_remove(edges, e);
      Rational credit = s.credits[static_cast<std::size_t>(comp)] +
                        s.credits[static_cast<std::size_t>(cp)] + rat(1) - rat(2);
      require(credit >= rat(2), Err::CreditDeficit,
              "medium-medium merge left " + to_string(credit));
      std::size_t before = comps.size();
      CoverState next = rebuild_state(inst, s, std::move(edges), {{c.vertices.front(), credit}});
      require(next.cover.decomp.components.size() < before, Err::Internal, "no merge happened");
      return next;
    }
    fail(Err::CaseExhausted, "isolated medium neighbour admits no shortcut edge");
  }

  // adjacent small part: weight-3 ear through it
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (part_comps[p].size() != 1) continue;
    int cp = part_comps[p].front();
    if (comps[static_cast<std::size_t>(cp)].size_class != SizeClass::Small) continue;
    const Component& cc = comps[static_cast<std::size_t>(cp)];
    for (const PortalPath& pp : spanning_paths(g, cc.vertices, cc.weight - 1)) {
      auto o1 = outgoing_at(inst, cc, pp.a, nullptr);
      auto o2 = outgoing_at(inst, cc, pp.b, nullptr);
      for (EdgeId c1 : o1)
        for (EdgeId c2 : o2) {
          if (c1 == c2) continue;
          EdgeSet edges = s.cover.edges;
          edges = set_minus(edges, cc.edges);
          edges = set_union(edges, pp.edges);
          set_add(edges, c1);
          set_add(edges, c2);
          int sold = subgraph_weight(g, set_minus(cc.edges, pp.edges));
          int added = subgraph_weight(g, set_minus(sorted_unique({c1, c2}), s.cover.edges)) +
                      subgraph_weight(g, set_minus(pp.edges, s.cover.edges));
          Rational credit = s.credits[static_cast<std::size_t>(comp)] +
                            s.credits[static_cast<std::size_t>(cp)] + rat(sold) - rat(added);
          require(credit >= rat(2), Err::CreditDeficit,
                  "medium-small merge left " + to_string(credit));
          std::size_t before = comps.size();
          CoverState next =
              rebuild_state(inst, s, std::move(edges), {{c.vertices.front(), credit}});
          require(next.cover.decomp.components.size() < before, Err::Internal, "no merge happened");
          return next;
        }
    }
    fail(Err::CaseExhausted,
         "isolated small neighbour admits no weight-3 ear (a contractible was missed)");
  }

  require(parts.size() == 2, Err::CaseExhausted,
          "medium separator with 3+ heavy parts (an S_k should have fired)");
  std::vector<std::vector<int>> part_of_vertex;
  for (VertexId v : cycle.first) {
    std::vector<int> ps;
    for (EdgeId e : outgoing_at(inst, c, v, nullptr)) {
      VertexId w = g.edge(e).other(v);
      for (std::size_t p = 0; p < parts.size(); ++p)
        if (set_contains(parts[p], w)) set_add(ps, static_cast<int>(p));
    }
    require(!ps.empty(), Err::CaseExhausted,
            "medium separator vertex with no outgoing edge (an S_k' should have fired)");
    part_of_vertex.push_back(ps);
  }
  auto vertex_pos = [&](VertexId v) -> std::size_t {
    for (std::size_t i = 0; i < cycle.first.size(); ++i)
      if (cycle.first[i] == v) return i;
    fail(Err::Internal, "vertex not on its component cycle");
  };
  for (EdgeId e : unit_edges) {
    auto pu = part_of_vertex[vertex_pos(g.edge(e).u)];
    auto pv = part_of_vertex[vertex_pos(g.edge(e).v)];
    std::vector<int> common = set_intersect(pu, pv);
    if (common.empty()) continue;
    const VertexSet& part = parts[static_cast<std::size_t>(common.front())];
    auto o1 = outgoing_at(inst, c, g.edge(e).u, &part);
    auto o2 = outgoing_at(inst, c, g.edge(e).v, &part);
    return merge_via_outgoing_pair(inst, s, comp, e, o1.front(), o2.front());
  }

  // the nice case: two unit edges with the same orientation along the cycle
  struct Oriented {
    EdgeId e;
    VertexId first, second;
    int pfirst;
  };
  std::vector<Oriented> oriented;
  for (std::size_t i = 0; i < cycle.first.size(); ++i) {
    EdgeId e = cycle.second[i];
    if (g.edge(e).weight != 1) continue;
    VertexId first = cycle.first[i];
    VertexId second = cycle.first[(i + 1) % cycle.first.size()];
    oriented.push_back({e, first, second, part_of_vertex[vertex_pos(first)].front()});
  }
  for (std::size_t i = 0; i < oriented.size(); ++i)
    for (std::size_t j = i + 1; j < oriented.size(); ++j) {
      if (oriented[i].pfirst != oriented[j].pfirst) continue;
      const Oriented &a = oriented[i], &b = oriented[j];
      const VertexSet& pf = parts[static_cast<std::size_t>(a.pfirst)];
      const VertexSet& ps2 = parts[static_cast<std::size_t>(1 - a.pfirst)];
      EdgeId f1 = outgoing_at(inst, c, a.first, &pf).front();
      EdgeId f2 = outgoing_at(inst, c, b.first, &pf).front();
      EdgeId g1 = outgoing_at(inst, c, a.second, &ps2).front();
      EdgeId g2 = outgoing_at(inst, c, b.second, &ps2).front();

      GHView gh = make_gh(inst, s.cover);
      auto far_comp = [&](EdgeId ce) {
        VertexId w = g.edge(ce).u;
        if (set_contains(c.vertices, w)) w = g.edge(ce).v;
        return s.cover.decomp.component_of(w);
      };
      EdgeSet bought = sorted_unique({f1, f2, g1, g2});
      std::vector<int> nodes{comp, far_comp(f1), far_comp(f2), far_comp(g1), far_comp(g2)};
      for (auto [x, y] : {std::make_pair(far_comp(f1), far_comp(f2)),
                          std::make_pair(far_comp(g1), far_comp(g2))}) {
        if (x == y) continue;
        auto path = gh_bfs(gh.gh, comps[static_cast<std::size_t>(x)].vertices.front(),
                           comps[static_cast<std::size_t>(y)].vertices.front(),
                           {c.vertices.front()});
        require(path.has_value(), Err::CaseExhausted, "part interior disconnected");
        for (EdgeId e : path->gh_edges)
          set_add(bought, gh.cm.edge_to_original[static_cast<std::size_t>(e)]);
        for (VertexId nd : path->nodes) nodes.push_back(s.cover.decomp.component_of(nd));
      }
      nodes = sorted_unique(nodes);
      EdgeSet edges = set_union(s.cover.edges, bought);
      set_remove(edges, a.e);
      set_remove(edges, b.e);
      Rational credit = rat(2) - rat(subgraph_weight(g, bought));
      for (int nd : nodes) credit += s.credits[static_cast<std::size_t>(nd)];
      require(credit >= rat(2), Err::CreditDeficit,
              "crossing-edge medium elimination left " + to_string(credit));
      std::size_t before = comps.size();
      CoverState next = rebuild_state(inst, s, std::move(edges), {{c.vertices.front(), credit}});
      require(next.cover.decomp.components.size() < before, Err::Internal, "no merge happened");
      return next;
    }
  fail(Err::CaseExhausted, "no aligned unit-edge pair on the medium separator cycle");
}

CoverState build_special_config(const MapInstance& inst, CoverState state, SpecialStats* stats,
                                const SearchLimits& lim) {
  check_state(inst, state);
  std::size_t guard = state.cover.decomp.components.size() + 1;
  while (guard-- > 0) {
    std::size_t before = state.cover.decomp.components.size();
    if (auto gc = find_good_cycle(inst, state, lim)) {
      state = merge_good_cycle(inst, state, *gc);
      if (stats) ++stats->good_cycle_merges;
    } else if (auto sm = find_small_merge(inst, state)) {
      state = apply_small_merge(inst, state, *sm);
      if (stats) ++stats->small_merges;
    } else if (auto ap = find_open_3aug(inst, state)) {
      state = merge_open_3aug(inst, state, *ap);
      if (stats) ++stats->open_3aug_merges;
    } else {
      int medium = -1;
      for (std::size_t i = 0; i < state.cover.decomp.components.size() && medium == -1; ++i)
        if (state.cover.decomp.components[i].size_class == SizeClass::Medium)
          medium = static_cast<int>(i);
      if (medium == -1) break;
      state = eliminate_medium(inst, state, medium, lim);
      if (stats) ++stats->medium_eliminations;
    }
    require(state.cover.decomp.components.size() < before, Err::Internal,
            "a merge step failed to reduce the component count");
  }
  state.cover.provenance = CoverProvenance::Special;
  require(is_special(inst, state, lim), Err::Internal,
          "build_special_config fixed point is not special");
  return state;
}

bool is_special(const MapInstance& inst, const CoverState& s, const SearchLimits& lim) {
  if (s.cover.decomp.count(SizeClass::Medium) > 0) return false;
  if (find_good_cycle(inst, s, lim)) return false;
  if (find_open_3aug(inst, s)) return false;
  if (find_small_merge(inst, s)) return false;
  return true;
}

}  // namespace map2ec
