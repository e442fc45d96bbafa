#pragma once

#include <optional>
#include <string>

#include "map2ec/exact.hpp"
#include "map2ec/glue.hpp"
#include "map2ec/special.hpp"

namespace map2ec {

enum class ConfigType { CutVertex, ParallelEdge, Contractible, S0, S1, S2, S34, Sk, SkPrime };
const char* config_type_name(ConfigType t);

struct ForbiddenConfig {
  ConfigType type{};
  VertexId cut_vertex = -1;
  EdgeId parallel_edge = -1;     // the unit copy that gets deleted
  VertexSet contract_set;        // W
  EdgeSet contract_edges;        // certified minimum 2ECSS of G[W]
  VertexSet side1, side2, side3;
  VertexId u = -1, v = -1, w = -1;
  EdgeId witness_edge = -1;      // S0's zero edge / S1's unit edge
  VertexSet cycle_vertices;      // S34 / Sk / Sk' (cycle order)
  EdgeSet cycle_edges;
  // frozen divide-time decisions
  int variant = 0;  // S1: 1 = H2' attach, 2 = H2''; S2: 0 = opt>=4, 1 = uw, 2 = uv, 3 = vw,
                    // 4 = none; S34: 1 = both sides >= 4, 2 = one side = 3
  std::optional<EdgeSet> h1_replacement;  // part-0 solution override (attachment witness)
  std::vector<EdgeSet> pseudo_realizations;  // part-1-relative witnesses per pseudo edge
};

struct DivideResult {
  std::vector<DerivedInstance> parts;
};

struct SolveOptions {
  int exact_threshold = 20;          // Algorithm 1 base-case bound
  int contractible_t = 12;
  long long contractible_cap = 1000000;  // candidate vertex sets per scan
  long long path_steps = 2000000;        // cycle-search step cap (0 = exhaustive)
};

struct SolveStats {
  long long divides = 0;
  std::map<std::string, long long> divides_by_type;
  int max_depth = 0;
  long long base_cases = 0;
  long long exact_nodes = 0;
  int pseudo_ears = 0;
  SpecialStats special;
  GlueStats glue_stats;
  long long contract_branches = 0;
  long long glue_wins = 0;
  bool contractible_cap_hit = false;
};

// Per-type detectors, exposed individually so the type-order property can be
// verified by independent scans.
std::optional<ForbiddenConfig> detect_cut_vertex(const MapInstance&);
std::optional<ForbiddenConfig> detect_parallel_edge(const MapInstance&);
std::optional<ForbiddenConfig> detect_contractible(const MapInstance&, const SolveOptions& = {},
                                                   SolveStats* = nullptr);
std::optional<ForbiddenConfig> detect_s0(const MapInstance&);
std::optional<ForbiddenConfig> detect_s1(const MapInstance&);
std::optional<ForbiddenConfig> detect_s2(const MapInstance&);
std::optional<ForbiddenConfig> detect_s34(const MapInstance&);
std::optional<ForbiddenConfig> detect_sk(const MapInstance&);
std::optional<ForbiddenConfig> detect_sk_prime(const MapInstance&);

// First configuration in the fixed type order, or absent (structured / small).
std::optional<ForbiddenConfig> detect_forbidden(const MapInstance&, const SolveOptions& = {},
                                                SolveStats* = nullptr);

// Splits the instance per the configuration's rule; freezes variant choices
// into cfg; asserts the size measure strictly decreases.
DivideResult divide(const MapInstance&, ForbiddenConfig& cfg, SolveStats* = nullptr);

EdgeSet combine(const MapInstance&, const ForbiddenConfig& cfg, const DivideResult& dr,
                const std::vector<EdgeSet>& part_solutions);

// Algorithm: brute force below the threshold, divide/recurse/combine on a
// forbidden configuration, otherwise the structured pipeline.
EdgeSet reduce(const MapInstance&, const SolveOptions& = {}, SolveStats* = nullptr);

EdgeSet alg_structured(const MapInstance&, const SolveOptions& = {}, SolveStats* = nullptr,
                       bool pre_checked = false);

EdgeSet contract_vs_glue(const MapInstance&, const CoverState& special, const SolveOptions&,
                         SolveStats*);

}  // namespace map2ec
