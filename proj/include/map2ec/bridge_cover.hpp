#pragma once

#include <vector>

#include "map2ec/cover.hpp"
#include "map2ec/rational.hpp"

namespace map2ec {

// Credits aligned with a cover's decomposition: component credits (c-credit),
// block credits (b-credit) and black-vertex credits (n-credit), all exact.
struct CreditLedger {
  std::vector<Rational> component_credit;
  std::vector<std::vector<Rational>> block_credit;
  std::map<VertexId, Rational> black_credit;

  Rational total() const;
};

// Each unit edge carries 13/8, keeps 1 for itself and hands 5/16 to each
// endpoint; the spare is pooled per entity. Requires a canonical cover.
CreditLedger init_credits(const MapInstance& inst, const TwoEdgeCover& h);

// Per-entity invariant: component >= 1; lone small block >= 1/4, lone medium
// block >= 7/8, every other block >= 1; black vertex v >= 5/16 * unit-degree.
void check_credit_invariant(const MapInstance& inst, const TwoEdgeCover& h,
                            const CreditLedger& ledger);

struct PseudoEar {
  int comp0 = -1;                 // component whose bridge is covered
  int block = -1;                 // pendant block index within comp0
  EdgeId bridge = -1;             // the unique bridge {r,u} at the block
  VertexId r = -1;                // bridge endpoint inside the block
  VertexId u = -1;
  std::vector<EdgeId> ear_edges;  // f_1..f_k in path order
  std::vector<int> via_components;
  VertexId head = -1;
  std::vector<VertexId> witness_path;  // r .. head inside comp0
  VertexSet exclusion;                 // Z
  char condition = '?';                // which witness condition certified
};

PseudoEar find_pseudo_ear(const MapInstance& inst, const TwoEdgeCover& h, int comp0, int block);

std::pair<TwoEdgeCover, CreditLedger> apply_pseudo_ear(const MapInstance& inst,
                                                       const TwoEdgeCover& h,
                                                       const CreditLedger& ledger,
                                                       const PseudoEar& ear);

struct BridgelessResult {
  TwoEdgeCover cover;
  std::vector<Rational> component_credits;  // c + b per (single-block) component
  int pseudo_ears = 0;
};

// Pseudo-ear augmentation until bridgeless; the result is economical:
// ||H|| <= 13/8*d2 - 2*n_l - 15/8*n_m - 5/4*n_s, every small component of the
// output is a small component of the input.
BridgelessResult cover_all_bridges(const MapInstance& inst, const TwoEdgeCover& canonical);

bool economical_holds(const MapInstance& inst, const TwoEdgeCover& h, int d2_weight);

}  // namespace map2ec
