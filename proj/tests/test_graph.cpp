#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "map2ec/graph.hpp"
#include "map2ec/rng.hpp"
#include "test_support.hpp"

using namespace map2ec;

TEST_CASE("validate_map_instance accepts the alternating 4-cycle") {
  MapInstance inst = oracle::alternating_cycle(4);
  CHECK(inst.graph.vertex_count() == 4);
  CHECK(inst.zero_edges.size() == 2);
}

TEST_CASE("validate rejects two zero edges sharing a vertex") {
  Graph g = Graph::from_triples(3, {{1, 2, 0}, {2, 3, 0}, {3, 1, 1}});
  CHECK_THROWS_WITH_AS(validate_map_instance(g), doctest::Contains("ZeroEdgesNotMatching"),
                       MapError);
}

TEST_CASE("validate rejects two triangles joined by one unit edge, naming the bridge") {
  Graph g = Graph::from_triples(6, {{1, 2, 1},
                                    {2, 3, 1},
                                    {3, 1, 0},
                                    {4, 5, 1},
                                    {5, 6, 1},
                                    {6, 4, 0},
                                    {3, 4, 1}});
  try {
    validate_map_instance(g);
    FAIL("expected NotTwoEdgeConnected");
  } catch (const MapError& e) {
    CHECK(e.code() == Err::NotTwoEdgeConnected);
    CHECK(std::string(e.what()).find("e6") != std::string::npos);  // the 3-4 connector
  }
}

TEST_CASE("validate rejects self-loops") {
  CHECK_THROWS_AS(Graph::from_triples(2, {{1, 1, 1}, {1, 2, 1}}), MapError);
}

TEST_CASE("subgraph_weight") {
  MapInstance c4 = oracle::alternating_cycle(4);
  CHECK(subgraph_weight(c4.graph, c4.graph.all_edge_ids()) == 2);
  CHECK(subgraph_weight(c4.graph, {}) == 0);
  MapInstance k4 = oracle::all_unit_clique(4);
  CHECK(subgraph_weight(k4.graph, k4.graph.all_edge_ids()) == 6);
}

TEST_CASE("is_spanning_2ec") {
  MapInstance c4 = oracle::alternating_cycle(4);
  CHECK(is_spanning_2ec(c4.graph, c4.graph.all_edge_ids()));
  EdgeSet minus = c4.graph.all_edge_ids();
  set_remove(minus, 0);
  CHECK_FALSE(is_spanning_2ec(c4.graph, minus));

  // two disjoint triangles inside a 6-vertex graph: not connected
  Graph g = Graph::from_triples(6, {{1, 2, 1},
                                    {2, 3, 1},
                                    {3, 1, 1},
                                    {4, 5, 1},
                                    {5, 6, 1},
                                    {6, 4, 1},
                                    {1, 4, 1},
                                    {2, 5, 1}});
  CHECK_FALSE(is_spanning_2ec(g, {0, 1, 2, 3, 4, 5}));
  CHECK(is_spanning_2ec(g, g.all_edge_ids()));
}

TEST_CASE("is_spanning_2ec holds for every validated instance's full edge set") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto inst = oracle::random_instance(8, 1.5, seed);
    REQUIRE(inst.has_value());
    CHECK(is_spanning_2ec(inst->graph, inst->graph.all_edge_ids()));
  }
}

TEST_CASE("decompose: dumbbell = triangle-bridge-triangle") {
  Graph g = Graph::from_triples(6, {{1, 2, 1},
                                    {2, 3, 1},
                                    {3, 1, 0},
                                    {4, 5, 1},
                                    {5, 6, 1},
                                    {6, 4, 0},
                                    {3, 4, 1},   // the bridge
                                    {1, 5, 1}}); // extra edge so the graph itself is 2EC
  MapInstance inst = validate_map_instance(g);
  EdgeSet cover = {0, 1, 2, 3, 4, 5, 6};  // both triangles plus the bridge
  Decomposition d = decompose(g, cover);
  REQUIRE(d.components.size() == 1);
  const Component& c = d.components[0];
  CHECK(c.complex);
  CHECK(c.bridges == EdgeSet{6});
  CHECK(c.blocks.size() == 2);
  CHECK(c.black_vertices.empty());
  CHECK(c.blocks[0].pendant);
  CHECK(c.blocks[1].pendant);
  // oracle: bridge set matches per-edge recomputation
  CHECK(oracle::naive_bridges(g, cover) == bridges_in(g, cover));
}

TEST_CASE("decompose: alternating cycles") {
  MapInstance c4 = oracle::alternating_cycle(4);
  Decomposition d4 = decompose(c4.graph, c4.graph.all_edge_ids());
  REQUIRE(d4.components.size() == 1);
  CHECK(d4.components[0].blocks.size() == 1);
  CHECK(d4.components[0].size_class == SizeClass::Small);

  MapInstance c6 = oracle::alternating_cycle(6);
  Decomposition d6 = decompose(c6.graph, c6.graph.all_edge_ids());
  REQUIRE(d6.components.size() == 1);
  CHECK(d6.components[0].size_class == SizeClass::Medium);
}

TEST_CASE("decompose bridge count identity on random covers") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto inst = oracle::random_instance(9, 1.2, seed);
    REQUIRE(inst.has_value());
    const Graph& g = inst->graph;
    EdgeSet all = g.all_edge_ids();
    CHECK(bridges_in(g, all) == oracle::naive_bridges(g, all));
    Decomposition d = decompose(g, all);
    for (const Component& c : d.components)
      if (c.complex)
        CHECK(c.bridges.size() == c.blocks.size() + c.black_vertices.size() - 1);
  }
}

TEST_CASE("contract a triangle edge's endpoints") {
  Graph g = Graph::from_triples(3, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}});
  auto [cg, cm] = contract(g, {{1, 2}});
  CHECK(cg.vertex_count() == 2);
  CHECK(cg.edge_count() == 2);
  CHECK(cm.dropped_loops == EdgeSet{0});
  CHECK(cm.vertex_map.at(2) == 1);
}

TEST_CASE("contract nothing is the identity") {
  MapInstance c4 = oracle::alternating_cycle(4);
  auto [cg, cm] = contract(c4.graph, {});
  CHECK(cg.vertex_count() == 4);
  CHECK(cg.edge_count() == 4);
  CHECK(cm.dropped_loops.empty());
  for (EdgeId e = 0; e < 4; ++e) CHECK(cm.edge_to_original[static_cast<std::size_t>(e)] == e);
}

TEST_CASE("contract two parts of a 10-vertex instance: counts and bijection") {
  auto inst = oracle::random_instance(10, 1.5, 77);
  REQUIRE(inst.has_value());
  const Graph& g = inst->graph;
  std::vector<VertexSet> parts = {{1, 2, 3}, {7, 8}};
  auto [cg, cm] = contract(g, parts);
  CHECK(cg.vertex_count() == 10 - 2 - 1);
  // every inter-part edge survives; re-expansion returns exactly the non-loops
  EdgeSet expanded = expand_edges(cm, cg.all_edge_ids());
  CHECK(expanded == set_minus(g.all_edge_ids(), cm.dropped_loops));
}

TEST_CASE("contract rejects overlapping parts") {
  MapInstance c4 = oracle::alternating_cycle(4);
  CHECK_THROWS_AS(contract(c4.graph, {{1, 2}, {2, 3}}), MapError);
}

TEST_CASE("expand_edges: empty set and weight preservation property") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto inst = oracle::random_instance(9, 1.4, seed);
    REQUIRE(inst.has_value());
    const Graph& g = inst->graph;
    Rng rng(seed * 31 + 7);
    std::vector<VertexSet> parts;
    VertexSet used;
    for (int p = 0; p < 2; ++p) {
      VertexSet part;
      int len = rng.uniform(2, 3);
      for (int i = 0; i < len; ++i) {
        VertexId v = rng.uniform(1, 9);
        if (!set_contains(used, v)) {
          set_add(part, v);
          set_add(used, v);
        }
      }
      if (part.size() >= 2) parts.push_back(part);
    }
    auto [cg, cm] = contract(g, parts);
    CHECK(expand_edges(cm, {}) == EdgeSet{});
    EdgeSet sub;
    for (EdgeId e = 0; e < cg.edge_count(); ++e)
      if (rng.below(2)) sub.push_back(e);
    CHECK(subgraph_weight(cg, sub) == subgraph_weight(g, expand_edges(cm, sub)));
    CHECK(expand_edges(cm, sub).size() == sub.size());
  }
}

TEST_CASE("size_measure") {
  Graph triangle = Graph::from_triples(3, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}});
  CHECK(size_measure(triangle) == 93);
  CHECK(size_measure(Graph()) == 0);
  MapInstance c4 = oracle::alternating_cycle(4);
  CHECK(size_measure(c4.graph) == 164);
}

TEST_CASE("size_measure is monotone in vertices and edges") {
  Graph g1 = Graph::from_triples(4, {{1, 2, 1}, {2, 3, 1}});
  Graph g2 = Graph::from_triples(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}});
  Graph g3 = Graph::from_triples(5, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}});
  CHECK(size_measure(g1) < size_measure(g2));
  CHECK(size_measure(g2) < size_measure(g3));
}

TEST_CASE("derived instances keep parent edge identity through contraction") {
  std::optional<MapInstance> inst;
  for (std::uint64_t seed = 5; seed < 40; ++seed) {
    inst = oracle::random_instance(10, 1.6, seed);
    if (inst && !inst->zero_edges.empty()) break;
  }
  REQUIRE(inst.has_value());
  REQUIRE(!inst->zero_edges.empty());
  const Edge& z = inst->graph.edge(inst->zero_edges.front());
  DerivedInstance d = contracted_instance(*inst, {{std::min(z.u, z.v), std::max(z.u, z.v)}});
  CHECK(d.inst.graph.vertex_count() == 9);
  for (EdgeId e = 0; e < d.inst.graph.edge_count(); ++e) {
    const Edge& de = d.inst.graph.edge(e);
    const Edge& pe = inst->graph.edge(d.to_parent[static_cast<std::size_t>(e)]);
    CHECK(de.weight == pe.weight);
  }
  // pseudo edges report -1 and refuse to map back
  add_pseudo_edges(d, {{d.inst.graph.vertices().front(), d.inst.graph.vertices().back()}});
  EdgeId pseudo = d.inst.pseudo_edges.front();
  CHECK(d.to_parent[static_cast<std::size_t>(pseudo)] == -1);
  CHECK_THROWS_AS(map_to_parent(d, {pseudo}), MapError);
}
