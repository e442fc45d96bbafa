#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "map2ec/graph.hpp"

namespace map2ec {

enum class GenModel {
  Random,      // random 2-edge-connected unit graph plus a random zero matching
  SmallHeavy,  // disjoint alternating 4-cycles wired by sparse unit edges
};

std::optional<GenModel> gen_model_from_string(const std::string& name);
const char* gen_model_name(GenModel m);

// Deterministic per (model, n, density, seed). density steers the number of
// extra unit edges beyond the guaranteed 2-edge-connected base.
MapInstance generate(GenModel model, int n, double density, std::uint64_t seed);

}  // namespace map2ec
