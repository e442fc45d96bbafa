#pragma once

#include <optional>
#include <vector>

#include "map2ec/graph.hpp"
#include "map2ec/rational.hpp"

namespace map2ec {

struct ExactOptions {
  int max_vertices = 20;          // Algorithm 1's brute-force bound
  long long node_budget = 0;      // 0 = unlimited
};

struct ExactResult {
  int weight = 0;
  EdgeSet witness;                // spanning 2-edge-connected, includes all zero edges
  long long nodes_explored = 0;
  bool budget_hit = false;
};

// Minimum-weight 2-ECSS by branch and bound over unit edges. Zero edges are
// always taken: adding them preserves 2-edge-connectivity at zero cost.
ExactResult opt_exact(const MapInstance& inst, const ExactOptions& opts = {});

// A witness with at most k unit edges (k <= 6), or absent. Each group in
// `attach` is a set of edge ids; the witness's unit edges must intersect every
// group. Only unit-edge subsets are enumerated: supersets preserve
// 2-edge-connectivity, so any feasible solution contains a feasible subset
// reachable by deficiency/cut branching.
std::optional<EdgeSet> opt_at_most(const MapInstance& inst, int k,
                                   const std::vector<EdgeSet>& attach = {});

// True iff some optimum of weight w (= opt_exact weight, w <= 4) hits every
// group. Complete enumeration of all weight-w optima; opt = w forces
// |V| <= 2w, so the enumeration is constant-size.
bool has_opt_with_attachment(const MapInstance& inst, int w, const std::vector<EdgeSet>& groups);
// Vertex-level wrapper: groups are the incident edge sets of the vertices.
bool has_opt_with_attachment_vertices(const MapInstance& inst, int w, const VertexSet& must_touch);

// f(G) = max(13/8 * opt - 2, opt), exact.
Rational f_value(int opt_weight);

// Minimum weight over all edge subsets with minimum degree 2 (test oracle;
// independent of the matching-based construction). |V| <= 10.
int min_2edge_cover_bruteforce(const MapInstance& inst);

}  // namespace map2ec
