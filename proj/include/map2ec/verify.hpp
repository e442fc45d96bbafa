#pragma once

#include <optional>
#include <string>

#include "map2ec/graph.hpp"
#include "map2ec/rational.hpp"

namespace map2ec {

// Independent solution check: feasibility and weight only need graph_core.
struct VerifyResult {
  bool feasible = false;
  int weight = 0;
  std::string failure;              // names a bridge or missing vertex when infeasible
  std::optional<int> exact_opt;     // when requested and within the threshold
  std::optional<bool> within_bound; // weight <= max(13/8 opt - 2, opt), exact
};

VerifyResult verify_solution(const MapInstance& inst, const EdgeSet& solution, bool with_exact,
                             int exact_threshold);

}  // namespace map2ec
