#include "map2ec/verify.hpp"

#include "map2ec/exact.hpp"

namespace map2ec {

VerifyResult verify_solution(const MapInstance& inst, const EdgeSet& solution, bool with_exact,
                             int exact_threshold) {
  const Graph& g = inst.graph;
  VerifyResult r;
  r.weight = subgraph_weight(g, solution);
  if (!edges_connect(g, solution, g.vertices())) {
    r.failure = "solution does not connect all vertices";
    return r;
  }
  EdgeSet bs = bridges_in(g, solution);
  if (!bs.empty()) {
    r.failure = "bridge " + format_edge(g, bs.front());
    return r;
  }
  r.feasible = true;
  if (with_exact && g.vertex_count() <= exact_threshold) {
    ExactOptions eo;
    eo.max_vertices = exact_threshold;
    ExactResult opt = opt_exact(inst, eo);
    r.exact_opt = opt.weight;
    r.within_bound = rat(r.weight) <= f_value(opt.weight);
  }
  return r;
}

}  // namespace map2ec
