#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "map2ec/matching.hpp"
#include "map2ec/rng.hpp"
#include "test_support.hpp"

using namespace map2ec;

namespace {

Graph random_graph(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  VertexSet vs;
  for (int i = 1; i <= n; ++i) vs.push_back(i);
  int guard = 0;
  while (static_cast<int>(edges.size()) < m && guard++ < 40 * m) {
    int u = rng.uniform(1, n), v = rng.uniform(1, n);
    if (u == v) continue;
    edges.push_back(Edge{u, v, 1});
  }
  return Graph(vs, edges);
}

}  // namespace

TEST_CASE("max_matching on a 5-cycle has size 2") {
  Graph c5 = Graph::from_triples(5, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 1, 1}});
  CHECK(max_matching(c5).size() == 2);
}

TEST_CASE("max_matching on the Petersen graph has size 5") {
  MapInstance p = oracle::petersen();
  CHECK(oracle::brute_matching(p.graph) == 5);
  CHECK(max_matching(p.graph).size() == 5);
}

TEST_CASE("max_matching on the empty graph") {
  CHECK(max_matching(Graph()).empty());
}

TEST_CASE("max_matching output is a matching and deterministic") {
  Graph g = random_graph(10, 18, 42);
  EdgeSet m1 = max_matching(g);
  EdgeSet m2 = max_matching(g);
  CHECK(m1 == m2);
  VertexSet used;
  for (EdgeId e : m1) {
    CHECK_FALSE(set_contains(used, g.edge(e).u));
    CHECK_FALSE(set_contains(used, g.edge(e).v));
    set_add(used, g.edge(e).u);
    set_add(used, g.edge(e).v);
  }
}

TEST_CASE("max_matching equals brute force on 200+ random graphs up to 12 vertices") {
  int trials = 0;
  for (std::uint64_t seed = 1; trials < 210; ++seed) {
    int n = 3 + static_cast<int>(seed % 10);
    int m = static_cast<int>(seed % 3 == 0 ? n : 2 * n);
    if (m > 18) m = 18;
    Graph g = random_graph(n, m, seed);
    CHECK(static_cast<int>(max_matching(g).size()) == oracle::brute_matching(g));
    ++trials;
  }
}

TEST_CASE("degree-constrained subgraph with caps 1 equals max matching") {
  Graph g = random_graph(9, 14, 7);
  DegreeBounds b;
  for (VertexId v : g.vertices()) b.cap[v] = std::min(1, g.degree(v));
  CHECK(max_degree_constrained_subgraph(g, b).size() == max_matching(g).size());
}

TEST_CASE("degree-constrained subgraph with caps = deg takes everything") {
  Graph g = random_graph(8, 13, 11);
  DegreeBounds b;
  for (VertexId v : g.vertices()) b.cap[v] = g.degree(v);
  CHECK(max_degree_constrained_subgraph(g, b) == g.all_edge_ids());
}

TEST_CASE("degree-constrained subgraph with caps 2 matches exhaustive search") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Graph g = random_graph(6, 10, seed * 13 + 1);
    DegreeBounds b;
    std::map<VertexId, int> caps;
    for (VertexId v : g.vertices()) {
      b.cap[v] = std::min(2, g.degree(v));
      caps[v] = b.cap[v];
    }
    EdgeSet got = max_degree_constrained_subgraph(g, b);
    CHECK(static_cast<int>(got.size()) == oracle::brute_dcs(g, caps));
  }
}

TEST_CASE("degree-constrained subgraph respects caps, is maximal, handles parallels") {
  Graph g(VertexSet{1, 2, 3},
          {Edge{1, 2, 1}, Edge{1, 2, 1}, Edge{2, 3, 1}, Edge{3, 1, 1}});
  DegreeBounds b;
  b.cap = {{1, 2}, {2, 2}, {3, 2}};
  EdgeSet got = max_degree_constrained_subgraph(g, b);
  std::map<VertexId, int> deg;
  for (EdgeId e : got) {
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  for (VertexId v : g.vertices()) CHECK(deg[v] <= 2);
  CHECK(got.size() == 3);
  // no addable edge
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (set_contains(got, e)) continue;
    CHECK((deg[g.edge(e).u] == 2 || deg[g.edge(e).v] == 2));
  }
}

TEST_CASE("capacity above degree is rejected") {
  Graph g = Graph::from_triples(2, {{1, 2, 1}});
  DegreeBounds b;
  b.cap = {{1, 2}, {2, 1}};
  CHECK_THROWS_AS(max_degree_constrained_subgraph(g, b), MapError);
}
