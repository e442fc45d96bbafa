#pragma once

#include <map>

#include "map2ec/graph.hpp"

namespace map2ec {

// Maximum cardinality matching (Edmonds' blossom algorithm). Deterministic:
// augmenting-path search scans vertices and neighbors in sorted order.
// Returns edge ids; parallel edges resolve to the lowest id per matched pair.
EdgeSet max_matching(const Graph& g);

struct DegreeBounds {
  std::map<VertexId, int> cap;
  int at(VertexId v) const {
    auto it = cap.find(v);
    return it == cap.end() ? 0 : it->second;
  }
};

// Maximum-cardinality edge subset with deg(v) <= cap(v), by the Tutte gadget:
// each vertex expands into cap(v) copies, each edge into a 2-path; a maximum
// matching of the gadget projects back with a fixed offset of |E|.
EdgeSet max_degree_constrained_subgraph(const Graph& g, const DegreeBounds& b);

}  // namespace map2ec
