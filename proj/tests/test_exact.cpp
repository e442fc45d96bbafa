#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "map2ec/exact.hpp"
#include "test_support.hpp"

using namespace map2ec;

TEST_CASE("opt_exact on the alternating cycles") {
  CHECK(opt_exact(oracle::alternating_cycle(4)).weight == 2);
  CHECK(opt_exact(oracle::alternating_cycle(6)).weight == 3);
}

TEST_CASE("opt_exact on the all-unit K4 matches exhaustive enumeration") {
  MapInstance k4 = oracle::all_unit_clique(4);
  auto brute = oracle::brute_opt(k4);
  REQUIRE(brute.has_value());
  CHECK(*brute == 4);  // a Hamiltonian 4-cycle
  ExactResult r = opt_exact(k4);
  CHECK(r.weight == 4);
  CHECK(is_spanning_2ec(k4.graph, r.witness));
}

TEST_CASE("opt_exact witness is optimal by exhaustive enumeration, |V| <= 8") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = oracle::random_instance(4 + static_cast<int>(seed % 5), 1.0, seed);
    REQUIRE(inst.has_value());
    auto brute = oracle::brute_opt(*inst);
    if (!brute) continue;
    ExactResult r = opt_exact(*inst);
    CHECK(r.weight == *brute);
    CHECK(is_spanning_2ec(inst->graph, r.witness));
    CHECK(subgraph_weight(inst->graph, r.witness) == r.weight);
    // all zero edges are in the witness
    for (EdgeId z : inst->zero_edges) CHECK(set_contains(r.witness, z));
  }
}

TEST_CASE("opt_exact refuses oversized instances and honors the budget flag") {
  auto inst = oracle::random_instance(12, 1.2, 3);
  REQUIRE(inst.has_value());
  ExactOptions tight;
  tight.max_vertices = 10;
  CHECK_THROWS_AS(opt_exact(*inst, tight), MapError);
  ExactOptions budget;
  budget.node_budget = 1;
  ExactResult r = opt_exact(*inst, budget);
  CHECK(r.budget_hit);
  CHECK(is_spanning_2ec(inst->graph, r.witness));  // best-known is still feasible
}

TEST_CASE("opt_at_most on the alternating 4-cycle") {
  MapInstance c4 = oracle::alternating_cycle(4);
  auto w2 = opt_at_most(c4, 2);
  REQUIRE(w2.has_value());
  CHECK(is_spanning_2ec(c4.graph, *w2));
  CHECK(subgraph_weight(c4.graph, *w2) <= 2);
  CHECK_FALSE(opt_at_most(c4, 1).has_value());
}

TEST_CASE("opt_at_most: all-unit K4 has no weight-3 solution") {
  MapInstance k4 = oracle::all_unit_clique(4);
  CHECK_FALSE(opt_at_most(k4, 3).has_value());
  CHECK(opt_at_most(k4, 4).has_value());
}

TEST_CASE("opt_at_most agrees with opt_exact for |V| <= 8") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = oracle::random_instance(4 + static_cast<int>(seed % 5), 1.0, seed + 500);
    REQUIRE(inst.has_value());
    int opt = opt_exact(*inst).weight;
    for (int k = 1; k <= 6; ++k) {
      bool present = opt_at_most(*inst, k).has_value();
      CHECK(present == (opt <= k));
    }
  }
}

TEST_CASE("has_opt_with_attachment: alternating 6-cycle touches everything") {
  MapInstance c6 = oracle::alternating_cycle(6);
  CHECK(has_opt_with_attachment_vertices(c6, 3, {1, 4}));
  CHECK(has_opt_with_attachment_vertices(c6, 3, {}));
  CHECK_THROWS_AS(has_opt_with_attachment_vertices(c6, 2, {1}), MapError);  // WeightMismatch
}

TEST_CASE("has_opt_with_attachment can reject an edge group the unique optimum avoids") {
  // 6-cycle with one chord: the unique optimum is the plain cycle; the chord
  // group is avoided. (A vertex-level group can never be avoided: every
  // spanning solution touches every vertex with a unit edge.)
  MapInstance inst = validate_map_instance(Graph::from_triples(
      6, {{1, 2, 0}, {2, 3, 1}, {3, 4, 0}, {4, 5, 1}, {5, 6, 0}, {6, 1, 1}, {2, 5, 1}}));
  REQUIRE(opt_exact(inst).weight == 3);
  CHECK_FALSE(has_opt_with_attachment(inst, 3, {{6}}));      // the chord's edge id
  CHECK(has_opt_with_attachment(inst, 3, {{1}, {3}, {5}}));  // the cycle's unit edges
}

TEST_CASE("f_value") {
  CHECK(f_value(2) == rat(2));
  CHECK(f_value(4) == rat(9, 2));
  CHECK(f_value(16) == rat(24));
}

TEST_CASE("f_value is monotone and at least the optimum") {
  for (int w = 0; w < 40; ++w) {
    CHECK(f_value(w) >= rat(w));
    CHECK(f_value(w + 1) > f_value(w));
  }
}

TEST_CASE("min_2edge_cover_bruteforce") {
  CHECK(min_2edge_cover_bruteforce(oracle::alternating_cycle(4)) == 2);
  CHECK(min_2edge_cover_bruteforce(oracle::alternating_cycle(6)) == 3);
  CHECK(min_2edge_cover_bruteforce(oracle::all_unit_clique(4)) == 4);
}

TEST_CASE("min_2edge_cover_bruteforce matches subset enumeration") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto inst = oracle::random_instance(4 + static_cast<int>(seed % 4), 0.8, seed + 90);
    REQUIRE(inst.has_value());
    if (inst->graph.unit_edge_ids().size() > 18) continue;
    CHECK(min_2edge_cover_bruteforce(*inst) == oracle::brute_min_cover(*inst));
  }
}

TEST_CASE("a 2-edge cover never outweighs the optimum") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto inst = oracle::random_instance(4 + static_cast<int>(seed % 5), 1.0, seed + 900);
    REQUIRE(inst.has_value());
    if (inst->graph.vertex_count() > 10) continue;
    CHECK(min_2edge_cover_bruteforce(*inst) <= opt_exact(*inst).weight);
  }
}
