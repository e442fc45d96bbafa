#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "map2ec/bridge_cover.hpp"
#include "test_support.hpp"

using namespace map2ec;

namespace {

// Two alternating squares joined by a unit bridge {1,5}, plus chords {2,6} and
// {3,7} that keep G 2-edge-connected. The cover is the squares + bridge: one
// complex component, two pendant 4-vertex small blocks. Canonical.
MapInstance dumbbell_instance() {
  return validate_map_instance(Graph::from_triples(
      8, {{1, 2, 0}, {2, 3, 1}, {3, 4, 0}, {4, 1, 1},
          {5, 6, 0}, {6, 7, 1}, {7, 8, 0}, {8, 5, 1},
          {1, 5, 1},                                  // bridge
          {2, 6, 1}, {3, 7, 1}}));
}

TwoEdgeCover dumbbell_cover(const MapInstance& inst) {
  return make_cover(inst, {0, 1, 2, 3, 4, 5, 6, 7, 8}, CoverProvenance::Canonical);
}

// Exhaustive pseudo-ear enumeration: all simple sequences of non-cover edges
// from the block through distinct other components back into comp0.
struct NaiveEar {
  std::vector<EdgeId> edges;
  VertexId head;
};

std::vector<NaiveEar> enumerate_ears(const MapInstance& inst, const TwoEdgeCover& h, int comp0,
                                     int block) {
  const Graph& g = inst.graph;
  const Component& c0 = h.decomp.components[static_cast<std::size_t>(comp0)];
  const Block& b = c0.blocks[static_cast<std::size_t>(block)];
  std::vector<NaiveEar> out;
  std::vector<EdgeId> seq;
  std::vector<int> used_comps;
  auto comp_of = [&](VertexId v) { return h.decomp.component_of(v); };
  auto rec = [&](auto&& self, int at_comp) -> void {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (set_contains(h.edges, e)) continue;
      if (!seq.empty() && e == seq.back()) continue;
      for (VertexId x : {g.edge(e).u, g.edge(e).v}) {
        VertexId y = g.edge(e).other(x);
        if (comp_of(x) != at_comp) continue;
        if (at_comp == comp0 && !seq.empty()) continue;  // only the start touches comp0
        if (at_comp == comp0 && !set_contains(b.vertices, x)) continue;
        int cy = comp_of(y);
        if (cy == comp0) {
          if (set_contains(b.vertices, y)) continue;
          out.push_back({seq, -1});
          out.back().edges.push_back(e);
          out.back().head = y;
          continue;
        }
        if (std::find(used_comps.begin(), used_comps.end(), cy) != used_comps.end()) continue;
        seq.push_back(e);
        used_comps.push_back(cy);
        self(self, cy);
        seq.pop_back();
        used_comps.pop_back();
      }
    }
  };
  rec(rec, comp0);
  return out;
}

}  // namespace

TEST_CASE("init_credits on a lone large block keeps the surplus in the component") {
  // all-unit 5-cycle: one large component, pool 5 * 5/8
  std::vector<std::array<int, 3>> tr;
  for (int i = 1; i <= 5; ++i) tr.push_back({i, i % 5 + 1, 1});
  MapInstance inst = validate_map_instance(Graph::from_triples(5, tr));
  TwoEdgeCover h = make_cover(inst, inst.graph.all_edge_ids(), CoverProvenance::Canonical);
  CreditLedger led = init_credits(inst, h);
  CHECK(led.block_credit[0][0] == rat(1));
  CHECK(led.component_credit[0] == rat(5, 8) * rat(5) - rat(1));
  CHECK(led.component_credit[0] >= rat(1));
}

TEST_CASE("init_credits on a lone small block: c-credit 1, b-credit 1/4") {
  MapInstance c4 = oracle::alternating_cycle(4);
  TwoEdgeCover h = make_cover(c4, c4.graph.all_edge_ids(), CoverProvenance::Canonical);
  CreditLedger led = init_credits(c4, h);
  CHECK(led.component_credit[0] == rat(1));
  CHECK(led.block_credit[0][0] == rat(1, 4));
}

TEST_CASE("init_credits on a complex component without large blocks") {
  MapInstance inst = dumbbell_instance();
  TwoEdgeCover h = dumbbell_cover(inst);
  REQUIRE(h.decomp.components.size() == 1);
  REQUIRE(h.decomp.components[0].blocks.size() == 2);
  CreditLedger led = init_credits(inst, h);
  // pendant pools are 25/16 each; both blocks get 1 and the component 9/8 >= 1
  CHECK(led.block_credit[0][0] == rat(1));
  CHECK(led.block_credit[0][1] == rat(1));
  CHECK(led.component_credit[0] == rat(9, 8));
  CHECK(led.total() == rat(5, 8) * rat(h.weight(inst.graph)));
}

TEST_CASE("init_credits surfaces non-canonical inputs through the invariant") {
  // two pendant small triangles around a black vertex: pools 5/4 + 25/16 < 3,
  // the complex-component allocation cannot fund the c-credit
  MapInstance thin = validate_map_instance(Graph::from_triples(
      7, {{1, 2, 0}, {2, 3, 1}, {3, 1, 1},   // triangle A (zero bridge side)
          {3, 7, 0}, {7, 4, 1},              // bridges through black vertex 7
          {4, 5, 1}, {5, 6, 0}, {6, 4, 1},   // triangle B
          {1, 5, 1}, {2, 6, 1}}));
  TwoEdgeCover th = make_cover(thin, {0, 1, 2, 3, 4, 5, 6, 7}, CoverProvenance::Raw);
  CHECK_FALSE(is_canonical(thin, th));
  CHECK_THROWS_AS(init_credits(thin, th), MapError);
}

TEST_CASE("find_pseudo_ear: white u1 gives Z = {} and condition (a)") {
  MapInstance inst = dumbbell_instance();
  TwoEdgeCover h = dumbbell_cover(inst);
  PseudoEar ear = find_pseudo_ear(inst, h, 0, 0);
  CHECK(ear.exclusion.empty());
  CHECK(ear.condition == 'a');
  CHECK(ear.ear_edges.size() == 1);  // a direct chord
  CHECK(ear.via_components.empty());
}

TEST_CASE("apply_pseudo_ear covers the bridge and conserves credit") {
  MapInstance inst = dumbbell_instance();
  TwoEdgeCover h = dumbbell_cover(inst);
  CreditLedger led = init_credits(inst, h);
  Rational before = led.total();
  PseudoEar ear = find_pseudo_ear(inst, h, 0, 0);
  auto [next, nled] = apply_pseudo_ear(inst, h, led, ear);
  CHECK(next.decomp.bridgeless());
  CHECK(next.decomp.components.size() == 1);
  CHECK(nled.total() == before - rat(static_cast<long long>(ear.ear_edges.size())));
}

TEST_CASE("a k=3 pseudo-ear merges three components") {
  // comp0: dumbbell on {1..8} (bridge {1,5}); comps C1 = {9..12}, C2 = {13..16}
  // alternating squares. Non-cover edges route block A -> C1 -> C2 -> comp0.
  std::vector<std::array<int, 3>> tr = {
      {1, 2, 0}, {2, 3, 1}, {3, 4, 0}, {4, 1, 1},          // square A
      {5, 6, 0}, {6, 7, 1}, {7, 8, 0}, {8, 5, 1},          // square B
      {1, 5, 1},                                           // bridge
      {9, 10, 0}, {10, 11, 1}, {11, 12, 0}, {12, 9, 1},    // C1
      {13, 14, 0}, {14, 15, 1}, {15, 16, 0}, {16, 13, 1},  // C2
      {2, 9, 1},    // A -> C1
      {10, 13, 1},  // C1 -> C2
      {14, 6, 1},   // C2 -> comp0 (head 6)
      {7, 15, 1},   // second leg, keeps G 2-edge-connected without a shortcut
  };
  MapInstance inst = validate_map_instance(Graph::from_triples(16, tr));
  TwoEdgeCover h = make_cover(inst, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16},
                              CoverProvenance::Canonical);
  REQUIRE(h.decomp.components.size() == 3);
  CreditLedger led = init_credits(inst, h);
  PseudoEar ear = find_pseudo_ear(inst, h, 0, 0);
  CHECK(ear.ear_edges.size() == 3);
  CHECK(ear.via_components.size() == 2);
  auto [next, nled] = apply_pseudo_ear(inst, h, led, ear);
  CHECK(next.decomp.components.size() == 1);  // dropped by 2
  check_credit_invariant(inst, next, nled);
}

TEST_CASE("found ear is a shortest ear by exhaustive enumeration") {
  MapInstance inst = dumbbell_instance();
  TwoEdgeCover h = dumbbell_cover(inst);
  auto ears = enumerate_ears(inst, h, 0, 0);
  REQUIRE(!ears.empty());
  std::size_t shortest = 1000;
  for (const NaiveEar& e : ears) shortest = std::min(shortest, e.edges.size());
  PseudoEar ear = find_pseudo_ear(inst, h, 0, 0);
  CHECK(ear.ear_edges.size() == shortest);
}

TEST_CASE("14-vertex instance with one bridged component: ear agrees with enumeration") {
  // dumbbell with a 6-cycle large block on one side and a detour square
  std::vector<std::array<int, 3>> tr = {
      {1, 2, 0},  {2, 3, 1},  {3, 4, 0},  {4, 1, 1},                // small square, pendant
      {5, 6, 1},  {6, 7, 1},  {7, 8, 0},  {8, 9, 1}, {9, 10, 0}, {10, 5, 1},  // large 6-cycle
      {1, 5, 1},                                                    // bridge
      {11, 12, 0}, {12, 13, 1}, {13, 14, 0}, {14, 11, 1},           // separate square C1
      {2, 11, 1},   // block -> C1
      {12, 6, 1},   // C1 -> comp0
      {3, 8, 1},    // direct chord, shorter ear
  };
  MapInstance inst = validate_map_instance(Graph::from_triples(14, tr));
  TwoEdgeCover h = make_cover(inst, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14},
                              CoverProvenance::Canonical);
  REQUIRE(h.decomp.components.size() == 2);
  REQUIRE(is_canonical(inst, h));
  auto ears = enumerate_ears(inst, h, 0, 0);
  REQUIRE(!ears.empty());
  std::size_t shortest = 1000;
  for (const NaiveEar& e : ears) shortest = std::min(shortest, e.edges.size());
  PseudoEar ear = find_pseudo_ear(inst, h, 0, 0);
  CHECK(ear.ear_edges.size() == shortest);
  CHECK(ear.ear_edges.size() == 1);  // the direct chord {3,8}
  CreditLedger led = init_credits(inst, h);
  auto [next, nled] = apply_pseudo_ear(inst, h, led, ear);
  check_credit_invariant(inst, next, nled);
  CHECK(next.decomp.components[static_cast<std::size_t>(next.decomp.component_of(1))]
            .bridges.empty());
}

TEST_CASE("cover_all_bridges: bridgeless input returned unchanged") {
  MapInstance c4 = oracle::alternating_cycle(4);
  TwoEdgeCover d2 = canonicalize_d2(c4, compute_d2(c4));
  BridgelessResult res = cover_all_bridges(c4, d2);
  CHECK(res.cover.edges == d2.edges);
  CHECK(res.pseudo_ears == 0);
}

TEST_CASE("cover_all_bridges on the dumbbell: economical inequality holds") {
  MapInstance inst = dumbbell_instance();
  TwoEdgeCover h = dumbbell_cover(inst);
  int d2w = h.weight(inst.graph);
  BridgelessResult res = cover_all_bridges(inst, h);
  CHECK(res.cover.decomp.bridgeless());
  CHECK(economical_holds(inst, res.cover, d2w));
  CHECK(res.pseudo_ears <= 1);  // one bridge initially
  for (std::size_t i = 0; i < res.cover.decomp.components.size(); ++i) {
    SizeClass c = res.cover.decomp.components[i].size_class;
    Rational need =
        c == SizeClass::Large ? rat(2) : (c == SizeClass::Medium ? rat(15, 8) : rat(5, 4));
    CHECK(res.component_credits[i] >= need);
  }
}
