#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "map2ec/cover.hpp"
#include "map2ec/exact.hpp"
#include "test_support.hpp"

using namespace map2ec;

TEST_CASE("compute_d2 on alternating cycles is the whole cycle") {
  MapInstance c4 = oracle::alternating_cycle(4);
  TwoEdgeCover d2 = compute_d2(c4);
  CHECK(d2.edges == c4.graph.all_edge_ids());
  CHECK(d2.weight(c4.graph) == 2);

  MapInstance c6 = oracle::alternating_cycle(6);
  CHECK(compute_d2(c6).weight(c6.graph) == 3);
}

TEST_CASE("compute_d2 weight equals the brute-force minimum on random 8-vertex instances") {
  int trials = 0;
  for (std::uint64_t seed = 1; trials < 200; ++seed) {
    auto inst = oracle::random_instance(8, 1.0, seed);
    if (!inst) continue;
    ++trials;
    TwoEdgeCover d2 = compute_d2(*inst);
    CHECK(d2.weight(inst->graph) == min_2edge_cover_bruteforce(*inst));
    // contains all zero edges, min degree two
    for (EdgeId z : inst->zero_edges) CHECK(set_contains(d2.edges, z));
  }
}

TEST_CASE("rho: single large block of 10 vertices") {
  // all-unit 10-cycle: one component, one large block
  std::vector<std::array<int, 3>> tr;
  for (int i = 1; i <= 10; ++i) tr.push_back({i, i % 10 + 1, 1});
  MapInstance inst = validate_map_instance(Graph::from_triples(10, tr));
  TwoEdgeCover h = make_cover(inst, inst.graph.all_edge_ids(), CoverProvenance::Raw);
  CHECK(rho(inst, h) == 100);
}

TEST_CASE("rho: two components, one small triangle block each") {
  MapInstance six = validate_map_instance(Graph::from_triples(
      6, {{1, 2, 0}, {2, 3, 1}, {3, 1, 1},
          {4, 5, 0}, {5, 6, 1}, {6, 4, 1},
          {1, 4, 1}, {2, 5, 1}}));
  TwoEdgeCover cov6 = make_cover(six, {0, 1, 2, 3, 4, 5}, CoverProvenance::Raw);
  CHECK(cov6.decomp.components.size() == 2);
  CHECK(rho(six, cov6) == 36LL * 2 + 6LL * 2);  // n^2*n_c + n*n_s
}

TEST_CASE("rho: 4-vertex small blocks are canonical and not counted") {
  // two alternating squares: the exchanges that create 4-vertex small blocks
  // must leave rho strictly lower, so they do not appear in n_s.
  MapInstance eight = validate_map_instance(Graph::from_triples(
      8, {{1, 2, 0}, {2, 3, 1}, {3, 4, 0}, {4, 1, 1},
          {5, 6, 0}, {6, 7, 1}, {7, 8, 0}, {8, 5, 1},
          {1, 5, 1}, {3, 7, 1}}));
  TwoEdgeCover cov = make_cover(eight, {0, 1, 2, 3, 4, 5, 6, 7}, CoverProvenance::Raw);
  CHECK(cov.decomp.components.size() == 2);
  CHECK(rho(eight, cov) == 64LL * 2);
}

TEST_CASE("rho: medium block incident to a unit-edge bridge contributes 0 to n_m") {
  // component: all-unit triangle {1,2,3} (medium) - unit bridge - triangle {4,5,6},
  // plus outside edges making the instance valid
  MapInstance inst = validate_map_instance(Graph::from_triples(
      6, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1},          // medium block
          {3, 4, 1},                                // unit bridge
          {4, 5, 1}, {5, 6, 1}, {6, 4, 1},          // medium block
          {1, 5, 1}}));
  EdgeSet cover = {0, 1, 2, 3, 4, 5, 6};
  TwoEdgeCover h = make_cover(inst, cover, CoverProvenance::Raw);
  // one component, two medium blocks, both incident to the unit bridge
  CHECK(rho(inst, h) == 36);
}

TEST_CASE("canonicalize_d2 leaves a canonical cover unchanged") {
  MapInstance c4 = oracle::alternating_cycle(4);
  TwoEdgeCover d2 = compute_d2(c4);
  TwoEdgeCover canon = canonicalize_d2(c4, d2);
  CHECK(canon.edges == d2.edges);
  CHECK(canon.provenance == CoverProvenance::Canonical);
}

TEST_CASE("canonicalize_d2 fixes a pendant small triangle, rho strictly drops") {
  // Component with a pendant triangle {1,2,3} hanging on a unit bridge from 3
  // to a large alternating 8-cycle {4..11}; vertex 2 has an outside edge to
  // the cycle so the triangle exchange applies.
  MapInstance inst = validate_map_instance(Graph::from_triples(
      11, {{1, 2, 0}, {2, 3, 1}, {3, 1, 1},                 // small triangle
           {3, 4, 1},                                       // bridge
           {4, 5, 1}, {5, 6, 0}, {6, 7, 1}, {7, 8, 0},      // 8-cycle
           {8, 9, 1}, {9, 10, 0}, {10, 11, 1}, {11, 4, 1},
           {2, 6, 1},                                       // outside edge at 2
           {1, 9, 1}}));                                    // second leg, keeps G 2EC
  EdgeSet cover = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  TwoEdgeCover h = make_cover(inst, cover, CoverProvenance::Raw);
  long long r0 = rho(inst, h);
  int w0 = h.weight(inst.graph);
  TwoEdgeCover canon = canonicalize_d2(inst, h);
  CHECK(rho(inst, canon) < r0);
  CHECK(canon.weight(inst.graph) == w0);
  CHECK(is_canonical(inst, canon));
}

TEST_CASE("canonicalize_d2 gives a medium pendant block a unit bridge") {
  // medium 4-cycle {1,2,3,4} (three units, one zero) pendant on a zero bridge
  // at 1 toward a large component; 2 has an outside edge.
  MapInstance inst = validate_map_instance(Graph::from_triples(
      10, {{1, 2, 1}, {2, 3, 1}, {3, 4, 0}, {4, 1, 1},        // medium block
           {1, 5, 0},                                         // zero bridge
           {5, 6, 1}, {6, 7, 1}, {7, 8, 1}, {8, 9, 1},
           {9, 10, 1}, {10, 5, 1},                            // large 6-cycle
           {2, 7, 1},                                         // outside edge at 2
           {4, 9, 1}}));
  EdgeSet cover = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  TwoEdgeCover h = make_cover(inst, cover, CoverProvenance::Raw);
  long long r0 = rho(inst, h);
  TwoEdgeCover canon = canonicalize_d2(inst, h);
  CHECK(rho(inst, canon) < r0);
  CHECK(canon.weight(inst.graph) == h.weight(inst.graph));
  CHECK(is_canonical(inst, canon));
}

TEST_CASE("canonicalize_d2 on computed D2s of random instances") {
  int trials = 0;
  for (std::uint64_t seed = 1; trials < 60; ++seed) {
    auto inst = oracle::random_instance(12, 1.2, seed + 3000, 3);
    if (!inst) continue;
    ++trials;
    TwoEdgeCover d2 = compute_d2(*inst);
    long long r0 = rho(*inst, d2);
    TwoEdgeCover canon;
    try {
      canon = canonicalize_d2(*inst, d2);
    } catch (const MapError& e) {
      // Unstructured inputs may legitimately have no exchange; nothing else
      // is acceptable.
      CHECK(e.code() == Err::ExchangeNotFound);
      continue;
    }
    CHECK(canon.weight(inst->graph) == d2.weight(inst->graph));
    CHECK(rho(*inst, canon) <= r0);
    CHECK(is_canonical(*inst, canon));
  }
}
