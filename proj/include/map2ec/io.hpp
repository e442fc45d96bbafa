#pragma once

#include <iosfwd>
#include <string>

#include "map2ec/graph.hpp"

namespace map2ec {

// DIMACS-flavoured instance format:
//   c <comment>
//   p map <n> <m>
//   e <u> <v> <w>      1-indexed vertices, w in {0,1}
MapInstance parse_instance(std::istream& in);
MapInstance parse_instance_file(const std::string& path);
std::string serialize_instance(const MapInstance& inst);

// Solution format:
//   s map <n> <k> <weight>
//   e <u> <v> <w>      a sub-multiset of the instance's edges
EdgeSet parse_solution(std::istream& in, const MapInstance& inst);
EdgeSet parse_solution_file(const std::string& path, const MapInstance& inst);
std::string serialize_solution(const MapInstance& inst, const EdgeSet& edges);

}  // namespace map2ec
