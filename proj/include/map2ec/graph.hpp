#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "map2ec/errors.hpp"

namespace map2ec {

using VertexId = int;
using EdgeId = int;
// Sorted, duplicate-free id lists. Edge identity (not endpoint pairs) is the
// unit of reference everywhere; parallel edges are otherwise indistinguishable.
using EdgeSet = std::vector<EdgeId>;
using VertexSet = std::vector<VertexId>;

bool set_contains(const std::vector<int>& s, int x);
void set_add(std::vector<int>& s, int x);
void set_remove(std::vector<int>& s, int x);
std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_intersect(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> sorted_unique(std::vector<int> v);

struct Edge {
  VertexId u{};
  VertexId v{};
  int weight{};  // 0 or 1

  VertexId other(VertexId w) const { return w == u ? v : u; }
  bool touches(VertexId w) const { return u == w || v == w; }
};

// Undirected 0/1-weighted multigraph. Parallel edges are permitted, self-loops
// are not (contraction discards them). Immutable after construction.
class Graph {
 public:
  Graph() = default;
  Graph(VertexSet vertices, std::vector<Edge> edges);

  // Convenience: vertices 1..n, edges given as (u, v, w) triples.
  static Graph from_triples(int n, const std::vector<std::array<int, 3>>& triples);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const VertexSet& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const;
  bool has_vertex(VertexId v) const { return set_contains(vertices_, v); }
  const EdgeSet& incident(VertexId v) const;
  int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }
  int unit_degree(VertexId v) const;
  EdgeSet all_edge_ids() const;
  EdgeSet unit_edge_ids() const;
  EdgeSet zero_edge_ids() const;
  // Lowest-id edge between u and v, if any.
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
  bool simple() const;  // no parallel edges

 private:
  VertexSet vertices_;
  std::vector<Edge> edges_;
  std::map<VertexId, EdgeSet> adj_;
};

// A validated MAP instance: 2-edge-connected, zero edges form a matching.
// pseudo_edges flags unit edges that have no counterpart in a parent instance
// (introduced by Divide); they must never survive into a combined solution.
struct MapInstance {
  Graph graph;
  EdgeSet zero_edges;
  EdgeSet pseudo_edges;
};

MapInstance validate_map_instance(const Graph& g);
MapInstance validate_map_instance(Graph g, EdgeSet pseudo_edges);

int subgraph_weight(const Graph& g, const EdgeSet& f);
// true iff (V(g), f) is connected, spans every vertex, and has no bridge.
bool is_spanning_2ec(const Graph& g, const EdgeSet& f);
// Bridges of the spanning subgraph (V(g), f), one DFS low-link pass.
EdgeSet bridges_in(const Graph& g, const EdgeSet& f);
bool edges_connect(const Graph& g, const EdgeSet& f, const VertexSet& verts);
// Connected components of (V(g), f), each sorted, ordered by lowest vertex.
std::vector<VertexSet> components_of(const Graph& g, const EdgeSet& f);
std::vector<VertexSet> components_of_vertices(const Graph& g, const VertexSet& verts);

enum class SizeClass { Small, Medium, Large };
SizeClass size_class_of_weight(int w);
const char* size_class_name(SizeClass c);

struct Block {
  VertexSet vertices;
  EdgeSet edges;
  int weight{};
  SizeClass size_class{};
  EdgeSet incident_bridges;
  bool pendant{};  // exactly one incident bridge
};

struct Component {
  VertexSet vertices;
  EdgeSet edges;
  int weight{};
  SizeClass size_class{};
  bool complex{};  // contains >= 1 bridge
  EdgeSet bridges;
  std::vector<Block> blocks;    // ordered by lowest vertex
  VertexSet black_vertices;     // in no block
};

struct Decomposition {
  std::vector<Component> components;  // ordered by lowest vertex
  std::map<VertexId, int> comp_index;

  int component_of(VertexId v) const;
  int count(SizeClass c) const;
  bool bridgeless() const;
};

// Requires f to be a 2-edge-cover of g (every vertex degree >= 2 in f).
Decomposition decompose(const Graph& g, const EdgeSet& f);

struct ContractionMap {
  std::map<VertexId, VertexId> vertex_map;  // original vertex -> super-vertex
  std::vector<EdgeId> edge_to_original;     // contracted edge id -> original id
  std::map<EdgeId, EdgeId> original_to_edge;
  EdgeSet dropped_loops;
};

// Contract each part into a single vertex (named by the part's lowest vertex);
// loops dropped and recorded, all other edges survive with weights intact.
std::pair<Graph, ContractionMap> contract(const Graph& g, const std::vector<VertexSet>& parts);
EdgeSet expand_edges(const ContractionMap& m, const EdgeSet& f);

// s(G) = 10*|V|^2 + |E|, the recursion measure.
long long size_measure(const Graph& g);

// An instance derived from a parent by induction/contraction/pseudo-edges.
// to_parent maps the derived instance's edge ids to parent edge ids (-1 for
// pseudo edges introduced here).
struct DerivedInstance {
  MapInstance inst;
  std::vector<EdgeId> to_parent;
  std::map<VertexId, VertexId> vertex_map;  // parent vertex -> derived vertex
};

DerivedInstance induced_instance(const MapInstance& parent, const VertexSet& keep);
DerivedInstance contracted_instance(const MapInstance& parent, const std::vector<VertexSet>& parts);
// Appends flagged unit pseudo-edges to an existing derived instance.
void add_pseudo_edges(DerivedInstance& d, const std::vector<std::pair<VertexId, VertexId>>& pairs);
// Derive further from an already-derived instance, composing edge maps.
DerivedInstance derive_induced(const DerivedInstance& base, const VertexSet& keep);
DerivedInstance derive_contracted(const DerivedInstance& base, const std::vector<VertexSet>& parts);

EdgeSet map_to_parent(const DerivedInstance& d, const EdgeSet& derived_edges);

std::string format_edge(const Graph& g, EdgeId e);

}  // namespace map2ec
