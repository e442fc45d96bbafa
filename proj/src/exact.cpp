#include "map2ec/exact.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace map2ec {

namespace {

int deficiency(const Graph& g, const std::map<VertexId, int>& deg) {
  int d = 0;
  for (VertexId v : g.vertices()) {
    auto it = deg.find(v);
    int dv = it == deg.end() ? 0 : it->second;
    d += std::max(0, 2 - dv);
  }
  return d;
}

std::map<VertexId, int> degrees_of(const Graph& g, const EdgeSet& f) {
  std::map<VertexId, int> deg;
  for (EdgeId e : f) {
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  return deg;
}

// Branch and bound over unit edges. Any optimum is minimal (dropping a unit
// edge breaks 2-edge-connectivity), so branching over the edges of a violated
// structure (deficient vertex, disconnection, bridge cut) is complete. The
// 2-edge-cover relaxation supplies the lower bound.
struct OptSearch {
  const MapInstance& inst;
  const Graph& g;
  EdgeSet zeros;
  long long budget;
  long long nodes = 0;
  bool budget_hit = false;
  int best_weight;
  EdgeSet best;
  std::set<EdgeSet> visited;

  OptSearch(const MapInstance& mi, long long node_budget)
      : inst(mi), g(mi.graph), budget(node_budget) {
    zeros = mi.zero_edges;
    // Greedy incumbent: start from all edges, drop unit edges while the rest
    // stays spanning 2-edge-connected.
    EdgeSet cur = g.all_edge_ids();
    EdgeSet units = g.unit_edge_ids();
    for (auto it = units.rbegin(); it != units.rend(); ++it) {
      EdgeSet without = cur;
      set_remove(without, *it);
      if (is_spanning_2ec(g, without)) cur = std::move(without);
    }
    best = cur;
    best_weight = subgraph_weight(g, best);
  }

  void run() { dfs({}); }

  int lower_bound(const EdgeSet& cur, const std::map<VertexId, int>& deg) const {
    int lb = (deficiency(g, deg) + 1) / 2;
    int comps = static_cast<int>(components_of(g, cur).size());
    if (comps > 1) lb = std::max(lb, comps);  // a cycle through c parts costs >= c
    return lb;
  }

  void dfs(const EdgeSet& chosen) {
    if (budget && nodes >= budget) {
      budget_hit = true;
      return;
    }
    if (!visited.insert(chosen).second) return;
    ++nodes;
    EdgeSet cur = set_union(zeros, chosen);
    int weight = static_cast<int>(chosen.size());
    std::map<VertexId, int> deg = degrees_of(g, cur);

    EdgeSet family;
    VertexId deficient = -1;
    for (VertexId v : g.vertices())
      if ((deg.count(v) ? deg.at(v) : 0) < 2) {
        deficient = v;
        break;
      }
    if (deficient != -1) {
      for (EdgeId e : g.incident(deficient))
        if (g.edge(e).weight == 1 && !set_contains(chosen, e)) set_add(family, e);
    } else if (!edges_connect(g, cur, g.vertices())) {
      VertexSet comp = components_of(g, cur).front();
      for (EdgeId e : g.unit_edge_ids())
        if (!set_contains(chosen, e) &&
            set_contains(comp, g.edge(e).u) != set_contains(comp, g.edge(e).v))
          set_add(family, e);
    } else {
      EdgeSet bs = bridges_in(g, cur);
      if (bs.empty()) {
        if (weight < best_weight) {
          best_weight = weight;
          best = cur;
        }
        return;
      }
      EdgeId b = bs.front();
      EdgeSet cut_test = cur;
      set_remove(cut_test, b);
      VertexSet side;
      for (const VertexSet& c : components_of(g, cut_test))
        if (set_contains(c, g.edge(b).u)) side = c;
      for (EdgeId e : g.unit_edge_ids())
        if (e != b && !set_contains(chosen, e) &&
            set_contains(side, g.edge(e).u) != set_contains(side, g.edge(e).v))
          set_add(family, e);
    }
    if (weight + std::max(1, lower_bound(cur, deg)) >= best_weight) return;
    for (EdgeId e : family) {
      EdgeSet next = chosen;
      set_add(next, e);
      dfs(next);
      if (budget_hit) return;
    }
  }
};

}  // namespace

ExactResult opt_exact(const MapInstance& inst, const ExactOptions& opts) {
  require(inst.graph.vertex_count() <= opts.max_vertices, Err::TooLarge,
          "opt_exact limited to " + std::to_string(opts.max_vertices) + " vertices, got " +
              std::to_string(inst.graph.vertex_count()));
  ExactResult r;
  if (inst.graph.vertex_count() == 0) return r;
  OptSearch s(inst, opts.node_budget);
  s.run();
  r.weight = s.best_weight;
  r.witness = set_union(s.best, inst.zero_edges);
  r.nodes_explored = s.nodes;
  r.budget_hit = s.budget_hit;
  return r;
}

namespace {

bool groups_hit(const Graph& g, const EdgeSet& solution, const std::vector<EdgeSet>& groups,
                std::size_t* first_unhit) {
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (set_intersect(solution, groups[i]).empty()) {
      if (first_unhit) *first_unhit = i;
      return false;
    }
  }
  return true;
}

struct AtMostSearch {
  const Graph& g;
  const EdgeSet& zeros;
  const std::vector<EdgeSet>& groups;
  int k;
  std::set<EdgeSet> visited;
  std::optional<EdgeSet> found;

  AtMostSearch(const Graph& gr, const EdgeSet& z, const std::vector<EdgeSet>& gs, int kk)
      : g(gr), zeros(z), groups(gs), k(kk) {}

  void dfs(const EdgeSet& chosen) {
    if (found) return;
    if (!visited.insert(chosen).second) return;
    EdgeSet cur = set_union(zeros, chosen);
    std::map<VertexId, int> deg = degrees_of(g, cur);
    int def = deficiency(g, deg);
    int slots = k - static_cast<int>(chosen.size());
    if (def > 2 * slots) return;

    EdgeSet family;  // unit edges any feasible superset must intersect
    if (def > 0) {
      VertexId v = -1;
      for (VertexId w : g.vertices())
        if ((deg.count(w) ? deg[w] : 0) < 2) {
          v = w;
          break;
        }
      for (EdgeId e : g.incident(v))
        if (g.edge(e).weight == 1 && !set_contains(chosen, e)) set_add(family, e);
    } else if (!edges_connect(g, cur, g.vertices())) {
      VertexSet comp = components_of(g, cur).front();
      for (EdgeId e : g.unit_edge_ids())
        if (!set_contains(chosen, e) &&
            set_contains(comp, g.edge(e).u) != set_contains(comp, g.edge(e).v))
          set_add(family, e);
    } else {
      EdgeSet bs = bridges_in(g, cur);
      if (!bs.empty()) {
        EdgeId b = bs.front();
        EdgeSet cut_test = cur;
        set_remove(cut_test, b);
        VertexSet side;
        for (const VertexSet& c : components_of(g, cut_test))
          if (set_contains(c, g.edge(b).u)) side = c;
        for (EdgeId e : g.unit_edge_ids())
          if (e != b && !set_contains(chosen, e) &&
              set_contains(side, g.edge(e).u) != set_contains(side, g.edge(e).v))
            set_add(family, e);
      } else {
        std::size_t unhit = 0;
        if (groups_hit(g, cur, groups, &unhit)) {
          found = cur;
          return;
        }
        for (EdgeId e : groups[unhit])
          if (g.edge(e).weight == 1 && !set_contains(chosen, e)) set_add(family, e);
      }
    }
    if (slots == 0 || family.empty()) return;
    for (EdgeId e : family) {
      EdgeSet next = chosen;
      set_add(next, e);
      dfs(next);
      if (found) return;
    }
  }
};

}  // namespace

std::optional<EdgeSet> opt_at_most(const MapInstance& inst, int k, const std::vector<EdgeSet>& attach) {
  const Graph& g = inst.graph;
  if (g.vertex_count() == 0) return EdgeSet{};
  std::map<VertexId, int> zdeg = degrees_of(g, inst.zero_edges);
  if (deficiency(g, zdeg) > 2 * k) return std::nullopt;
  AtMostSearch s(g, inst.zero_edges, attach, k);
  s.dfs({});
  return s.found;
}

bool has_opt_with_attachment(const MapInstance& inst, int w, const std::vector<EdgeSet>& groups) {
  ExactResult r = opt_exact(inst);
  require(r.weight == w, Err::WeightMismatch,
          "stated weight " + std::to_string(w) + " but optimum is " + std::to_string(r.weight));
  if (groups.empty()) return true;
  EdgeSet units = inst.graph.unit_edge_ids();
  int m = static_cast<int>(units.size());
  // Enumerate all unit subsets of size exactly w; opt = w bounds |V| <= 2w.
  std::vector<int> pick;
  std::optional<bool> result;
  auto rec = [&](auto&& self, int start, int need) -> bool {
    if (need == 0) {
      EdgeSet chosen;
      for (int i : pick) chosen.push_back(units[static_cast<std::size_t>(i)]);
      EdgeSet sol = set_union(inst.zero_edges, sorted_unique(std::move(chosen)));
      return is_spanning_2ec(inst.graph, sol) && groups_hit(inst.graph, sol, groups, nullptr);
    }
    for (int i = start; i <= m - need; ++i) {
      pick.push_back(i);
      if (self(self, i + 1, need - 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  (void)result;
  return rec(rec, 0, w);
}

bool has_opt_with_attachment_vertices(const MapInstance& inst, int w, const VertexSet& must_touch) {
  std::vector<EdgeSet> groups;
  for (VertexId v : must_touch) groups.push_back(inst.graph.incident(v));
  return has_opt_with_attachment(inst, w, groups);
}

Rational f_value(int opt_weight) {
  require(opt_weight >= 0, Err::Internal, "negative optimum weight");
  Rational a = rat(13, 8) * rat(opt_weight) - rat(2);
  Rational b = rat(opt_weight);
  return std::max(a, b);
}

namespace {

struct CoverSearch {
  const Graph& g;
  const EdgeSet& zeros;
  int best;
  std::set<EdgeSet> visited;

  CoverSearch(const Graph& gr, const EdgeSet& z) : g(gr), zeros(z) {
    // Greedy feasible cover for the initial bound.
    EdgeSet chosen;
    while (true) {
      EdgeSet cur = set_union(zeros, chosen);
      std::map<VertexId, int> deg = degrees_of(g, cur);
      VertexId v = -1;
      for (VertexId w : g.vertices())
        if ((deg.count(w) ? deg[w] : 0) < 2) {
          v = w;
          break;
        }
      if (v == -1) break;
      bool added = false;
      for (EdgeId e : g.incident(v))
        if (g.edge(e).weight == 1 && !set_contains(chosen, e)) {
          set_add(chosen, e);
          added = true;
          break;
        }
      require(added, Err::Internal, "no unit edge available to cover a deficient vertex");
    }
    best = static_cast<int>(chosen.size());
  }

  void dfs(const EdgeSet& chosen) {
    if (!visited.insert(chosen).second) return;
    EdgeSet cur = set_union(zeros, chosen);
    std::map<VertexId, int> deg = degrees_of(g, cur);
    int def = deficiency(g, deg);
    int weight = static_cast<int>(chosen.size());
    if (weight + (def + 1) / 2 >= best) return;
    if (def == 0) {
      best = weight;
      return;
    }
    VertexId v = -1;
    for (VertexId w : g.vertices())
      if ((deg.count(w) ? deg[w] : 0) < 2) {
        v = w;
        break;
      }
    for (EdgeId e : g.incident(v)) {
      if (g.edge(e).weight != 1 || set_contains(chosen, e)) continue;
      EdgeSet next = chosen;
      set_add(next, e);
      dfs(next);
    }
  }
};

}  // namespace

int min_2edge_cover_bruteforce(const MapInstance& inst) {
  require(inst.graph.vertex_count() <= 10, Err::TooLarge,
          "min_2edge_cover_bruteforce is a test oracle for |V| <= 10");
  if (inst.graph.vertex_count() == 0) return 0;
  CoverSearch s(inst.graph, inst.zero_edges);
  s.dfs({});
  return s.best;
}

}  // namespace map2ec
