#pragma once

#include "map2ec/graph.hpp"

namespace map2ec {

enum class CoverProvenance { Raw, Canonical, Bridgeless, Special };

struct TwoEdgeCover {
  EdgeSet edges;
  Decomposition decomp;
  CoverProvenance provenance = CoverProvenance::Raw;

  int weight(const Graph& g) const { return subgraph_weight(g, edges); }
};

TwoEdgeCover make_cover(const MapInstance& inst, EdgeSet edges, CoverProvenance prov);

// Minimum-weight 2-edge-cover containing all zero edges: fix the zero edges,
// then the complement (within unit edges) of a maximum degree-constrained
// subgraph with caps unit_deg(v) - b(v), where b(v) = 2 - zero_deg(v).
TwoEdgeCover compute_d2(const MapInstance& inst);

// rho(H) = n^2 * n_c + n * n_s + n_m. n_s counts small blocks on exactly 3
// vertices and n_m medium blocks with no incident unit-edge bridge; the
// canonicalization exchanges strictly decrease this quantity.
long long rho(const MapInstance& inst, const TwoEdgeCover& h);

// Exchange unit edges (weight preserved) until every small pendant block has
// exactly 4 vertices and every medium pendant block is incident to a
// unit-edge bridge. Each applied exchange strictly decreases rho.
TwoEdgeCover canonicalize_d2(const MapInstance& inst, const TwoEdgeCover& h);

bool is_canonical(const MapInstance& inst, const TwoEdgeCover& h);

}  // namespace map2ec
