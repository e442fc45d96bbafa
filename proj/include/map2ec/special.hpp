#pragma once

#include <optional>

#include "map2ec/bridge_cover.hpp"
#include "map2ec/cover.hpp"

namespace map2ec {

// Cover plus per-component credits, threaded through the merge phases.
// Credit minima: large >= 2, medium >= 15/8, small >= 5/4 (the executable form
// of the economical inequality).
struct CoverState {
  TwoEdgeCover cover;
  std::vector<Rational> credits;
  int d2_weight = 0;
  // The gluing phase runs a relaxed scheme (large 2, small 4/3) and its own
  // weight bound instead of the economical inequality.
  bool glue_phase = false;
};

CoverState make_state(const MapInstance& inst, BridgelessResult&& bridgeless, int d2_weight);
void check_state(const MapInstance& inst, const CoverState& s);
Rational credit_minimum(SizeClass c);

// Simple cycle of g containing every edge of f (|f| <= 6). Guided DFS over
// chain arrangements with disjoint connector paths; step_cap 0 = exhaustive.
struct CycleWitness {
  std::vector<VertexId> nodes;  // cycle order
  std::vector<EdgeId> edges;    // edges[i] joins nodes[i], nodes[i+1 mod size]
};
std::optional<CycleWitness> cycle_through_edges(const Graph& g, const EdgeSet& f,
                                                long long step_cap = 0);

// A spanning path of G[verts] with the given unit weight containing every zero
// edge of G[verts]; endpoints are the merge portals.
struct PortalPath {
  VertexId a = -1;
  VertexId b = -1;
  EdgeSet edges;
};
std::vector<PortalPath> spanning_paths(const Graph& g, const VertexSet& verts, int weight);

enum class GoodCycleFlavor { TwoLarge, TwoShortcuts, LargePlusShortcut };

struct GoodCycle {
  std::vector<int> nodes;       // component indices in cycle order
  std::vector<EdgeId> edges;    // crossing edges of G, aligned with nodes
  struct Shortcut {
    int node;           // component index
    EdgeSet replacement;
  };
  std::vector<Shortcut> shortcuts;  // savings = one unit per shortcut
  GoodCycleFlavor flavor{};
};

struct SearchLimits {
  long long path_steps = 0;  // 0 = exhaustive
};

std::optional<GoodCycle> find_good_cycle(const MapInstance& inst, const CoverState& s,
                                         const SearchLimits& lim = {});
CoverState merge_good_cycle(const MapInstance& inst, const CoverState& s, const GoodCycle& gc);

struct AugPath3 {
  int x1, x2, x3, x4;        // component indices; x2, x3 small interiors
  EdgeId e1, e2, e3;         // crossing edges of G
  EdgeSet path2, path3;      // spanning replacement paths for x2, x3
};

std::optional<AugPath3> find_open_3aug(const MapInstance& inst, const CoverState& s);
CoverState merge_open_3aug(const MapInstance& inst, const CoverState& s, const AugPath3& p);

struct SmallMerge {
  int s1, s2, s3;            // small component indices
  EdgeSet cycle1, cycle2;    // cycle2 empty for a small-to-large merge
  bool to_large = false;
};

std::optional<SmallMerge> find_small_merge(const MapInstance& inst, const CoverState& s);
CoverState apply_small_merge(const MapInstance& inst, const CoverState& s, const SmallMerge& m);

CoverState eliminate_medium(const MapInstance& inst, const CoverState& s, int comp,
                            const SearchLimits& lim = {});

struct SpecialStats {
  int good_cycle_merges = 0;
  int small_merges = 0;
  int open_3aug_merges = 0;
  int medium_eliminations = 0;
};

// Loop good cycle -> small merge -> open 3-augmenting path -> medium
// elimination until none applies; every step strictly decreases the number of
// components and keeps the cover economical.
CoverState build_special_config(const MapInstance& inst, CoverState economical,
                                SpecialStats* stats = nullptr, const SearchLimits& lim = {});

bool is_special(const MapInstance& inst, const CoverState& s, const SearchLimits& lim = {});

}  // namespace map2ec
