#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "map2ec/exact.hpp"
#include "map2ec/graph.hpp"
#include "map2ec/rng.hpp"

// Test-only oracles. These stay independent of the implementation paths they
// check: plain subset enumeration and per-edge recomputation only.
namespace oracle {

using namespace map2ec;

// Bridges by deleting each edge and re-checking connectivity, O(V*E) per edge.
inline EdgeSet naive_bridges(const Graph& g, const EdgeSet& f) {
  EdgeSet out;
  for (EdgeId e : f) {
    EdgeSet rest = f;
    set_remove(rest, e);
    VertexSet touched;
    for (EdgeId x : f) {
      set_add(touched, g.edge(x).u);
      set_add(touched, g.edge(x).v);
    }
    // e is a bridge iff its endpoints fall apart without it
    std::vector<VertexSet> comps = components_of(g, rest);
    const Edge& ed = g.edge(e);
    for (const VertexSet& c : comps)
      if (set_contains(c, ed.u) && !set_contains(c, ed.v)) out.push_back(e);
  }
  return out;
}

// Minimum 2-ECSS weight by exhaustive enumeration over unit-edge subsets.
inline std::optional<int> brute_opt(const MapInstance& inst, int max_units = 18) {
  EdgeSet units = inst.graph.unit_edge_ids();
  int m = static_cast<int>(units.size());
  if (m > max_units) return std::nullopt;
  int best = -1;
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    int w = __builtin_popcountl(mask);
    if (best != -1 && w >= best) continue;
    EdgeSet f = inst.zero_edges;
    for (int i = 0; i < m; ++i)
      if (mask & (1UL << i)) set_add(f, units[static_cast<std::size_t>(i)]);
    if (is_spanning_2ec(inst.graph, f)) best = w;
  }
  if (best == -1) return std::nullopt;
  return best;
}

// Maximum matching cardinality by backtracking over edges.
inline int brute_matching(const Graph& g) {
  int m = g.edge_count();
  int best = 0;
  std::vector<VertexId> used;
  auto rec = [&](auto&& self, int i, int size) -> void {
    best = std::max(best, size);
    if (i >= m) return;
    if (size + (m - i) <= best) return;
    self(self, i + 1, size);
    const Edge& e = g.edge(i);
    if (!set_contains(used, e.u) && !set_contains(used, e.v)) {
      set_add(used, e.u);
      set_add(used, e.v);
      self(self, i + 1, size + 1);
      set_remove(used, e.u);
      set_remove(used, e.v);
    }
  };
  rec(rec, 0, 0);
  return best;
}

// Maximum degree-constrained subgraph size by subset enumeration.
inline int brute_dcs(const Graph& g, const std::map<VertexId, int>& cap) {
  int m = g.edge_count();
  int best = 0;
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    std::map<VertexId, int> deg;
    bool ok = true;
    int size = 0;
    for (int i = 0; i < m && ok; ++i)
      if (mask & (1UL << i)) {
        ++size;
        const Edge& e = g.edge(i);
        auto lim = [&](VertexId v) {
          auto it = cap.find(v);
          return it == cap.end() ? 0 : it->second;
        };
        if (++deg[e.u] > lim(e.u) || ++deg[e.v] > lim(e.v)) ok = false;
      }
    if (ok) best = std::max(best, size);
  }
  return best;
}

// Minimum 2-edge-cover weight by subset enumeration over unit edges.
inline int brute_min_cover(const MapInstance& inst) {
  EdgeSet units = inst.graph.unit_edge_ids();
  int m = static_cast<int>(units.size());
  int best = m + 1;
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    int w = __builtin_popcountl(mask);
    if (w >= best) continue;
    std::map<VertexId, int> deg;
    for (EdgeId e : inst.zero_edges) {
      ++deg[inst.graph.edge(e).u];
      ++deg[inst.graph.edge(e).v];
    }
    for (int i = 0; i < m; ++i)
      if (mask & (1UL << i)) {
        const Edge& e = inst.graph.edge(units[static_cast<std::size_t>(i)]);
        ++deg[e.u];
        ++deg[e.v];
      }
    bool ok = true;
    for (VertexId v : inst.graph.vertices())
      if (deg[v] < 2) ok = false;
    if (ok) best = w;
  }
  return best;
}

// All simple cycles (as sorted edge-id sets) of a graph with few vertices.
inline std::vector<EdgeSet> all_simple_cycles(const Graph& g) {
  std::vector<EdgeSet> out;
  int m = g.edge_count();
  for (EdgeId start = 0; start < m; ++start) {
    // cycles whose lowest edge id is `start`
    std::vector<EdgeId> path_edges{start};
    VertexSet on_path{g.edge(start).u, g.edge(start).v};
    std::sort(on_path.begin(), on_path.end());
    VertexId home = g.edge(start).u;
    auto rec = [&](auto&& self, VertexId at) -> void {
      for (EdgeId e : g.incident(at)) {
        if (e <= start) continue;
        if (std::find(path_edges.begin(), path_edges.end(), e) != path_edges.end()) continue;
        VertexId to = g.edge(e).other(at);
        if (to == home) {
          EdgeSet cyc = path_edges;
          cyc.push_back(e);
          out.push_back(sorted_unique(std::move(cyc)));
          continue;
        }
        if (set_contains(on_path, to)) continue;
        path_edges.push_back(e);
        set_add(on_path, to);
        self(self, to);
        path_edges.pop_back();
        set_remove(on_path, to);
      }
    };
    rec(rec, g.edge(start).v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- instance builders ----

// Alternating cycle 1..n: odd edges zero, even edges unit (n even).
inline MapInstance alternating_cycle(int n) {
  std::vector<std::array<int, 3>> tr;
  for (int i = 1; i <= n; ++i) tr.push_back({i, i % n + 1, i % 2 == 0 ? 1 : 0});
  return validate_map_instance(Graph::from_triples(n, tr));
}

inline MapInstance all_unit_clique(int n) {
  std::vector<std::array<int, 3>> tr;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) tr.push_back({i, j, 1});
  return validate_map_instance(Graph::from_triples(n, tr));
}

inline MapInstance petersen() {
  std::vector<std::array<int, 3>> tr;
  for (int i = 0; i < 5; ++i) tr.push_back({i + 1, (i + 1) % 5 + 1, 1});        // outer C5
  for (int i = 0; i < 5; ++i) tr.push_back({i + 6, (i + 2) % 5 + 6, 1});        // inner pentagram
  for (int i = 0; i < 5; ++i) tr.push_back({i + 1, i + 6, 1});                  // spokes
  return validate_map_instance(Graph::from_triples(10, tr));
}

// Random connected unit graph with a random zero matching; retried until
// 2-edge-connected. Deterministic per seed.
inline std::optional<MapInstance> random_instance(int n, double density, std::uint64_t seed,
                                                  int min_degree = 2) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 60; ++attempt) {
    std::vector<std::array<int, 3>> tr;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    rng.shuffle(perm);
    std::vector<std::pair<int, int>> present;
    auto add = [&](int u, int v) {
      if (u > v) std::swap(u, v);
      if (std::find(present.begin(), present.end(), std::make_pair(u, v)) != present.end())
        return false;
      present.emplace_back(u, v);
      tr.push_back({u, v, 1});
      return true;
    };
    for (int i = 0; i < n; ++i)
      add(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>((i + 1) % n)]);
    long long max_extra = static_cast<long long>(n) * (n - 1) / 2 - n;
    long long extra = std::min<long long>(max_extra, static_cast<long long>(density * n));
    int guard = 0;
    while (extra > 0 && guard < 50 * n) {
      int u = rng.uniform(1, n), v = rng.uniform(1, n);
      ++guard;
      if (u == v) continue;
      if (add(u, v)) --extra;
    }
    // random zero matching over existing edges
    std::vector<std::size_t> idx(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) idx[i] = i;
    rng.shuffle(idx);
    VertexSet matched;
    int want = rng.uniform(0, n / 2);
    for (std::size_t i : idx) {
      if (want == 0) break;
      auto& t = tr[i];
      if (set_contains(matched, t[0]) || set_contains(matched, t[1])) continue;
      t[2] = 0;
      set_add(matched, t[0]);
      set_add(matched, t[1]);
      --want;
    }
    try {
      MapInstance inst = validate_map_instance(Graph::from_triples(n, tr));
      bool deg_ok = true;
      for (VertexId v : inst.graph.vertices())
        if (inst.graph.degree(v) < min_degree) deg_ok = false;
      if (deg_ok) return inst;
    } catch (const MapError&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace oracle
