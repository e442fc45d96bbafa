#include "map2ec/glue.hpp"

#include <algorithm>
#include <deque>

namespace map2ec {

namespace {

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

std::optional<std::pair<std::vector<VertexId>, std::vector<EdgeId>>> gh_bfs(
    const Graph& gh, VertexId from, VertexId to, const VertexSet& banned) {
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
  std::vector<VertexId> nodes{to};
  std::vector<EdgeId> edges;
  while (par[nodes.back()].first != nodes.back()) {
    edges.push_back(par[nodes.back()].second);
    nodes.push_back(par[nodes.back()].first);
  }
  std::reverse(nodes.begin(), nodes.end());
  std::reverse(edges.begin(), edges.end());
  return std::make_pair(nodes, edges);
}

}  // namespace

std::vector<ClosedPath2> daux_arcs(const MapInstance& inst, const CoverState& s) {
  const auto& comps = s.cover.decomp.components;
  GHView gh = make_gh(inst, s.cover);
  std::vector<ClosedPath2> arcs;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].size_class != SizeClass::Small) continue;
    const Component& c = comps[i];
    std::map<VertexId, std::vector<EdgeId>> crossing_at;
    for (EdgeId e : gh.gh.incident(c.vertices.front()))
      crossing_at[endpoint_in(inst, gh, c, e)].push_back(e);
    for (const PortalPath& p : spanning_paths(inst.graph, c.vertices, c.weight - 1)) {
      if (!crossing_at.count(p.a) || !crossing_at.count(p.b)) continue;
      for (EdgeId e1 : crossing_at[p.a])
        for (EdgeId e2 : crossing_at[p.b]) {
          if (e1 == e2) continue;
          VertexId t1 = gh.gh.edge(e1).other(c.vertices.front());
          VertexId t2 = gh.gh.edge(e2).other(c.vertices.front());
          if (t1 != t2) continue;  // closed: both edges reach the same node
          ClosedPath2 arc;
          arc.interior = static_cast<int>(i);
          arc.target = s.cover.decomp.component_of(t1);
          arc.e1 = gh.cm.edge_to_original[static_cast<std::size_t>(e1)];
          arc.e2 = gh.cm.edge_to_original[static_cast<std::size_t>(e2)];
          arc.portal = p.edges;
          arcs.push_back(std::move(arc));
        }
    }
  }
  return arcs;
}

std::optional<OpenAug2> find_open_2aug(const MapInstance& inst, const CoverState& s) {
  const auto& comps = s.cover.decomp.components;
  GHView gh = make_gh(inst, s.cover);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].size_class != SizeClass::Small) continue;
    const Component& c = comps[i];
    std::map<VertexId, std::vector<EdgeId>> crossing_at;
    for (EdgeId e : gh.gh.incident(c.vertices.front()))
      crossing_at[endpoint_in(inst, gh, c, e)].push_back(e);
    for (const PortalPath& p : spanning_paths(inst.graph, c.vertices, c.weight - 1)) {
      if (!crossing_at.count(p.a) || !crossing_at.count(p.b)) continue;
      for (EdgeId e1 : crossing_at[p.a])
        for (EdgeId e2 : crossing_at[p.b]) {
          if (e1 == e2) continue;
          VertexId t1 = gh.gh.edge(e1).other(c.vertices.front());
          VertexId t2 = gh.gh.edge(e2).other(c.vertices.front());
          if (t1 == t2) continue;  // open: distinct end nodes
          OpenAug2 a;
          a.x1 = s.cover.decomp.component_of(t1);
          a.x2 = static_cast<int>(i);
          a.x3 = s.cover.decomp.component_of(t2);
          a.e1 = gh.cm.edge_to_original[static_cast<std::size_t>(e1)];
          a.e2 = gh.cm.edge_to_original[static_cast<std::size_t>(e2)];
          a.portal = p.edges;
          return a;
        }
    }
  }
  return std::nullopt;
}

std::optional<StackedPath> find_stacked(const MapInstance& inst, const CoverState& s) {
  std::vector<ClosedPath2> arcs = daux_arcs(inst, s);
  for (const ClosedPath2& a1 : arcs) {
    if (s.cover.decomp.components[static_cast<std::size_t>(a1.target)].size_class !=
        SizeClass::Small)
      continue;
    for (const ClosedPath2& a2 : arcs) {
      if (a2.interior != a1.target) continue;
      if (a2.target == a1.interior) continue;  // |V(P1) cap V(P2)| = 1
      return StackedPath{a1, a2};
    }
  }
  return std::nullopt;
}

namespace {

CoverState merge_open_2aug(const MapInstance& inst, const CoverState& s, const OpenAug2& a) {
  const auto& comps = s.cover.decomp.components;
  GHView gh = make_gh(inst, s.cover);
  auto rep = [&](int c) { return comps[static_cast<std::size_t>(c)].vertices.front(); };
  auto detour = gh_bfs(gh.gh, rep(a.x1), rep(a.x3), {rep(a.x2)});
  require(detour.has_value(), Err::PathNotFound,
          "no x1->x3 path avoiding the open 2-augmenting interior "
          "(S_{3,4}-type separator present)");
  GoodCycle gc;
  gc.flavor = GoodCycleFlavor::TwoShortcuts;  // shape only; one shortcut here
  gc.nodes = {a.x2, a.x1};
  for (std::size_t i = 1; i + 1 < detour->first.size(); ++i)
    gc.nodes.push_back(s.cover.decomp.component_of(detour->first[i]));
  gc.nodes.push_back(a.x3);
  gc.edges = {a.e1};
  for (EdgeId e : detour->second)
    gc.edges.push_back(gh.cm.edge_to_original[static_cast<std::size_t>(e)]);
  gc.edges.push_back(a.e2);
  gc.shortcuts = {{a.x2, a.portal}};
  return merge_good_cycle(inst, s, gc);
}

CoverState merge_stacked(const MapInstance& inst, const CoverState& s, const StackedPath& sp) {
  const auto& comps = s.cover.decomp.components;
  EdgeSet edges = s.cover.edges;
  for (int c : {sp.p1.interior, sp.p2.interior})
    edges = set_minus(edges, comps[static_cast<std::size_t>(c)].edges);
  edges = set_union(edges, sp.p1.portal);
  edges = set_union(edges, sp.p2.portal);
  EdgeSet bought = sorted_unique({sp.p1.e1, sp.p1.e2, sp.p2.e1, sp.p2.e2});
  require(bought.size() == 4, Err::Internal, "stacked paths use 4 distinct edges");
  edges = set_union(edges, bought);

  std::vector<int> nodes = sorted_unique({sp.p1.interior, sp.p2.interior, sp.p2.target});
  Rational credit = rat(2) - rat(4);
  for (int nd : nodes) credit += s.credits[static_cast<std::size_t>(nd)];
  require(credit >= rat(2), Err::CreditDeficit, "stacked merge left credit " + to_string(credit));

  std::size_t before = comps.size();
  CoverState next = s;
  next.cover = make_cover(inst, std::move(edges), s.cover.provenance);
  next.credits.assign(next.cover.decomp.components.size(), rat(-1));
  next.credits[static_cast<std::size_t>(
      next.cover.decomp.component_of(comps[static_cast<std::size_t>(sp.p1.interior)]
                                         .vertices.front()))] = credit;
  std::map<VertexSet, Rational> carry;
  for (std::size_t i = 0; i < comps.size(); ++i) carry[comps[i].vertices] = s.credits[i];
  for (std::size_t i = 0; i < next.credits.size(); ++i) {
    if (next.credits[i] >= rat(0)) continue;
    auto it = carry.find(next.cover.decomp.components[i].vertices);
    require(it != carry.end(), Err::Internal, "stacked merge produced an unaccounted component");
    next.credits[i] = it->second;
  }
  check_state(inst, next);
  require(next.cover.decomp.components.size() < before, Err::Internal,
          "stacked merge did not reduce the component count");
  return next;
}

}  // namespace

EdgeSet glue(const MapInstance& inst, const CoverState& special, GlueStats* stats,
             const SearchLimits& lim) {
  require(special.cover.decomp.count(SizeClass::Medium) == 0, Err::Internal,
          "glue expects a special configuration (no medium components)");
  long long nl = special.cover.decomp.count(SizeClass::Large);
  long long ns = special.cover.decomp.count(SizeClass::Small);
  int s_weight = special.cover.weight(inst.graph);

  CoverState state = special;
  state.glue_phase = true;
  for (std::size_t i = 0; i < state.credits.size(); ++i)
    state.credits[i] = state.cover.decomp.components[i].size_class == SizeClass::Small
                           ? rat(4, 3)
                           : rat(2);
  check_state(inst, state);

  std::size_t guard = state.cover.decomp.components.size() + 1;
  while (state.cover.decomp.components.size() >= 2 && guard-- > 0) {
    if (auto gc = find_good_cycle(inst, state, lim)) {
      state = merge_good_cycle(inst, state, *gc);
      if (stats) ++stats->good_cycle_merges;
      continue;
    }
    if (auto oa = find_open_2aug(inst, state)) {
      state = merge_open_2aug(inst, state, *oa);
      if (stats) ++stats->open_2aug_merges;
      continue;
    }
    if (auto st = find_stacked(inst, state)) {
      state = merge_stacked(inst, state, *st);
      if (stats) ++stats->stacked_merges;
      continue;
    }
    // fall back to an exhaustive good-cycle search before giving up
    if (lim.path_steps != 0) {
      if (auto gc = find_good_cycle(inst, state, SearchLimits{0})) {
        state = merge_good_cycle(inst, state, *gc);
        if (stats) ++stats->good_cycle_merges;
        continue;
      }
    }
    std::string diag = "D^aux arcs:";
    for (const ClosedPath2& a : daux_arcs(inst, state))
      diag += " " + std::to_string(a.interior) + "->" + std::to_string(a.target);
    fail(Err::NoObstruction,
         "no good cycle, open 2-augmenting path or stacked path with >= 2 components left (" +
             diag + ")");
  }
  require(state.cover.decomp.components.size() == 1, Err::Internal, "glue did not finish");
  require(is_spanning_2ec(inst.graph, state.cover.edges), Err::Internal,
          "glue output is not spanning 2-edge-connected");
  Rational bound = rat(s_weight) + rat(2) * rat(nl) + rat(4, 3) * rat(ns) - rat(2);
  require(rat(state.cover.weight(inst.graph)) <= bound, Err::CreditDeficit,
          "glue bound violated: " + std::to_string(state.cover.weight(inst.graph)) + " > " +
              to_string(bound));
  return state.cover.edges;
}

}  // namespace map2ec
