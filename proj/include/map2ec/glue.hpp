#pragma once

#include "map2ec/special.hpp"

namespace map2ec {

// A closed 2-augmenting path: two crossing edges from the portal ends of a
// small interior component to a common neighbour node. One arc of D^aux.
struct ClosedPath2 {
  int interior = -1;   // small component index (the arc's tail)
  int target = -1;     // neighbour component index (the arc's head)
  EdgeId e1 = -1;      // crossing G-edges at the interior's portal ends
  EdgeId e2 = -1;
  EdgeSet portal;      // spanning replacement path of the interior
};

struct OpenAug2 {
  int x1, x2, x3;      // x2 small interior
  EdgeId e1, e2;
  EdgeSet portal;
};

// Two stacked closed 2-augmenting paths: a length-2 directed path in D^aux.
struct StackedPath {
  ClosedPath2 p1, p2;  // p1.target == p2.interior, p2.target != p1.interior
};

std::optional<OpenAug2> find_open_2aug(const MapInstance& inst, const CoverState& s);
std::optional<StackedPath> find_stacked(const MapInstance& inst, const CoverState& s);
// All D^aux arcs (for diagnostics and the stacked search).
std::vector<ClosedPath2> daux_arcs(const MapInstance& inst, const CoverState& s);

struct GlueStats {
  int good_cycle_merges = 0;
  int open_2aug_merges = 0;
  int stacked_merges = 0;
};

// Algorithm: merge good cycles, open 2-augmenting paths and stacked closed
// 2-augmenting paths until a single component remains. The result is spanning
// 2-edge-connected with ||result|| <= ||S|| + 2*n_l + 4/3*n_s - 2.
EdgeSet glue(const MapInstance& inst, const CoverState& special, GlueStats* stats = nullptr,
             const SearchLimits& lim = {});

}  // namespace map2ec
