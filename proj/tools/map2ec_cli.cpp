// map2ec: solver and tooling for the matching augmentation problem.
#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "map2ec/cover.hpp"
#include "map2ec/exact.hpp"
#include "map2ec/generate.hpp"
#include "map2ec/io.hpp"
#include "map2ec/reduce.hpp"
#include "map2ec/verify.hpp"

using namespace map2ec;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitInternal = 4;

int exit_code_for(const MapError& e) {
  switch (e.code()) {
    case Err::ParseError: return kExitParse;
    case Err::SelfLoop:
    case Err::ZeroEdgesNotMatching:
    case Err::NotTwoEdgeConnected:
    case Err::TooLarge:
    case Err::GenerationFailed: return kExitInvalid;
    default: return kExitInternal;
  }
}

struct RunReport {
  std::string instance_id;
  int n = 0, m = 0;
  int d2_weight = 0;
  int output_weight = 0;
  std::optional<int> exact_opt;
  std::optional<bool> bound_satisfied;
  double ratio_to_d2 = 0;
  SolveStats stats;
  double wall_ms = 0;
};

json report_to_json(const RunReport& r) {
  json j;
  j["schema_version"] = 1;
  j["instance"] = r.instance_id;
  j["n"] = r.n;
  j["m"] = r.m;
  j["d2_weight"] = r.d2_weight;
  j["output_weight"] = r.output_weight;
  j["ratio_to_d2"] = r.ratio_to_d2;
  if (r.exact_opt) j["exact_opt"] = *r.exact_opt;
  if (r.bound_satisfied) j["bound_satisfied"] = *r.bound_satisfied;
  j["counters"] = {{"divides", r.stats.divides},
                   {"recursion_depth", r.stats.max_depth},
                   {"base_cases", r.stats.base_cases},
                   {"pseudo_ears", r.stats.pseudo_ears},
                   {"good_cycle_merges", r.stats.special.good_cycle_merges},
                   {"small_merges", r.stats.special.small_merges},
                   {"open_3aug_merges", r.stats.special.open_3aug_merges},
                   {"medium_eliminations", r.stats.special.medium_eliminations},
                   {"glue_good_cycles", r.stats.glue_stats.good_cycle_merges},
                   {"glue_open_2aug", r.stats.glue_stats.open_2aug_merges},
                   {"glue_stacked", r.stats.glue_stats.stacked_merges},
                   {"contract_branches", r.stats.contract_branches},
                   {"glue_wins", r.stats.glue_wins},
                   {"contractible_cap_hit", r.stats.contractible_cap_hit}};
  json by_type = json::object();
  for (const auto& [k, v] : r.stats.divides_by_type) by_type[k] = v;
  j["counters"]["divides_by_type"] = by_type;
  j["wall_ms"] = r.wall_ms;
  return j;
}

void print_report(const RunReport& r, bool as_json) {
  if (as_json) {
    std::cout << report_to_json(r).dump(2) << "\n";
    return;
  }
  std::cout << "instance       " << r.instance_id << "\n"
            << "n, m           " << r.n << ", " << r.m << "\n"
            << "d2 weight      " << r.d2_weight << "\n"
            << "output weight  " << r.output_weight << "\n"
            << "ratio to d2    " << r.ratio_to_d2 << "\n";
  if (r.exact_opt)
    std::cout << "exact opt      " << *r.exact_opt << " (bound "
              << (r.bound_satisfied.value_or(false) ? "satisfied" : "VIOLATED") << ")\n";
  std::cout << "wall time      " << r.wall_ms << " ms\n"
            << "divides        " << r.stats.divides << " (depth " << r.stats.max_depth << ")\n"
            << "pseudo-ears    " << r.stats.pseudo_ears << "\n"
            << "merges         " << r.stats.special.good_cycle_merges << " good-cycle, "
            << r.stats.special.small_merges << " small, " << r.stats.special.open_3aug_merges
            << " 3-aug, " << r.stats.special.medium_eliminations << " medium\n"
            << "glue           " << r.stats.glue_stats.good_cycle_merges << " good-cycle, "
            << r.stats.glue_stats.open_2aug_merges << " 2-aug, "
            << r.stats.glue_stats.stacked_merges << " stacked\n";
  if (r.stats.contractible_cap_hit)
    std::cout << "warning        contractible scan hit its candidate cap\n";
}

RunReport run_solve(const MapInstance& inst, const std::string& id, const SolveOptions& opts,
                    bool oracle, EdgeSet* out_edges) {
  RunReport r;
  r.instance_id = id;
  r.n = inst.graph.vertex_count();
  r.m = inst.graph.edge_count();
  auto t0 = std::chrono::steady_clock::now();
  r.d2_weight = compute_d2(inst).weight(inst.graph);
  EdgeSet sol = reduce(inst, opts, &r.stats);
  auto t1 = std::chrono::steady_clock::now();
  r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  r.output_weight = subgraph_weight(inst.graph, sol);
  r.ratio_to_d2 = r.d2_weight == 0 ? 1.0 : static_cast<double>(r.output_weight) / r.d2_weight;
  if (oracle && r.n <= opts.exact_threshold) {
    ExactOptions eo;
    eo.max_vertices = opts.exact_threshold;
    ExactResult opt = opt_exact(inst, eo);
    r.exact_opt = opt.weight;
    r.bound_satisfied = rat(r.output_weight) <= f_value(opt.weight);
  }
  if (out_edges) *out_edges = sol;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"map2ec: 2-edge-connected spanning subgraph solver for matching-augmented graphs"};
  app.require_subcommand(1);

  SolveOptions opts;
  std::string input, output;
  bool as_json = false;
  bool oracle = false;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input) cmd->add_option("--input", input, "instance file")->required();
    cmd->add_flag("--json", as_json, "machine-readable output");
    cmd->add_option("--exact-threshold", opts.exact_threshold, "brute-force bound (default 20)");
    cmd->add_option("--contractible-t", opts.contractible_t, "contractible size bound (default 12)");
    cmd->add_option("--contractible-cap", opts.contractible_cap,
                    "candidate cap for the contractible scan");
    cmd->add_option("--path-steps", opts.path_steps, "cycle search step cap (0 = exhaustive)");
  };

  auto* solve = app.add_subcommand("solve", "solve an instance and print a run report");
  add_common(solve, true);
  solve->add_flag("--oracle", oracle, "compare against the exact optimum when feasible");
  solve->add_option("--output", output, "write the solution file here");

  auto* d2cmd = app.add_subcommand("d2", "compute a minimum 2-edge-cover");
  add_common(d2cmd, true);

  std::string solution_path;
  bool verify_exact = false;
  auto* verify = app.add_subcommand("verify", "independently check a solution file");
  add_common(verify, true);
  verify->add_option("--solution", solution_path, "solution file")->required();
  verify->add_flag("--exact", verify_exact, "also compare against the exact optimum");

  std::string model = "random";
  int gen_n = 12;
  double density = 1.0;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--model", model, "random | small-heavy");
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--density", density, "extra-edge density (default 1.0)");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--output", output, "write the instance here (default stdout)");

  int bench_count = 20;
  int bench_nmin = 8, bench_nmax = 12;
  auto* bench = app.add_subcommand("bench", "solve a seeded corpus and summarize");
  add_common(bench, false);
  bench->add_option("--model", model, "random | small-heavy");
  bench->add_option("--count", bench_count, "number of instances");
  bench->add_option("--n-min", bench_nmin, "smallest instance");
  bench->add_option("--n-max", bench_nmax, "largest instance");
  bench->add_option("--density", density, "generator density");
  bench->add_option("--seed", seed, "base seed");
  bench->add_flag("--oracle", oracle, "exact comparison when within the threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      MapInstance inst = parse_instance_file(input);
      EdgeSet sol;
      RunReport r = run_solve(inst, input, opts, oracle, &sol);
      if (!output.empty()) {
        std::ofstream os(output);
        os << serialize_solution(inst, sol);
      }
      print_report(r, as_json);
      if (r.bound_satisfied && !*r.bound_satisfied) return kExitInternal;
      return 0;
    }
    if (d2cmd->parsed()) {
      MapInstance inst = parse_instance_file(input);
      TwoEdgeCover d2 = compute_d2(inst);
      if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["d2_weight"] = d2.weight(inst.graph);
        j["components"] = d2.decomp.components.size();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "d2 weight " << d2.weight(inst.graph) << " with "
                  << d2.decomp.components.size() << " components\n";
      }
      return 0;
    }
    if (verify->parsed()) {
      MapInstance inst = parse_instance_file(input);
      EdgeSet sol = parse_solution_file(solution_path, inst);
      VerifyResult r = verify_solution(inst, sol, verify_exact, opts.exact_threshold);
      if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["feasible"] = r.feasible;
        j["weight"] = r.weight;
        if (!r.failure.empty()) j["failure"] = r.failure;
        if (r.exact_opt) j["exact_opt"] = *r.exact_opt;
        if (r.within_bound) j["within_bound"] = *r.within_bound;
        std::cout << j.dump(2) << "\n";
      } else if (r.feasible) {
        std::cout << "feasible, weight " << r.weight;
        if (r.exact_opt)
          std::cout << ", optimum " << *r.exact_opt << ", bound "
                    << (r.within_bound.value_or(false) ? "satisfied" : "VIOLATED");
        std::cout << "\n";
      } else {
        std::cout << "INFEASIBLE: " << r.failure << "\n";
      }
      if (!r.feasible) return kExitInvalid;
      if (r.within_bound && !*r.within_bound) return kExitInvalid;
      return 0;
    }
    if (gen->parsed()) {
      auto m = gen_model_from_string(model);
      require(m.has_value(), Err::ParseError, "unknown model " + model);
      MapInstance inst = generate(*m, gen_n, density, seed);
      std::string text = serialize_instance(inst);
      if (output.empty())
        std::cout << text;
      else {
        std::ofstream os(output);
        os << text;
      }
      return 0;
    }
    if (bench->parsed()) {
      auto m = gen_model_from_string(model);
      require(m.has_value(), Err::ParseError, "unknown model " + model);
      json rows = json::array();
      int bound_checked = 0, bound_ok = 0;
      double total_ms = 0;
      if (!as_json)
        std::cout << "instance            n   m    d2  out  opt  ratio   ms\n";
      for (int i = 0; i < bench_count; ++i) {
        int n = bench_nmin + (bench_nmax > bench_nmin
                                  ? static_cast<int>((seed + static_cast<std::uint64_t>(i)) %
                                                     static_cast<std::uint64_t>(bench_nmax - bench_nmin + 1))
                                  : 0);
        MapInstance inst = generate(*m, n, density, seed + static_cast<std::uint64_t>(i));
        std::string id = std::string(gen_model_name(*m)) + "-" + std::to_string(n) + "-" +
                         std::to_string(seed + static_cast<std::uint64_t>(i));
        RunReport r = run_solve(inst, id, opts, oracle, nullptr);
        total_ms += r.wall_ms;
        if (r.bound_satisfied) {
          ++bound_checked;
          if (*r.bound_satisfied) ++bound_ok;
        }
        if (as_json)
          rows.push_back(report_to_json(r));
        else
          std::printf("%-18s %3d %4d %4d %4d %4s %6.3f %6.1f\n", r.instance_id.c_str(), r.n, r.m,
                      r.d2_weight, r.output_weight,
                      r.exact_opt ? std::to_string(*r.exact_opt).c_str() : "-", r.ratio_to_d2,
                      r.wall_ms);
      }
      if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["runs"] = rows;
        j["bound_checked"] = bound_checked;
        j["bound_satisfied"] = bound_ok;
        j["total_ms"] = total_ms;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "bound satisfied on " << bound_ok << "/" << bound_checked
                  << " oracle-checked runs, total " << total_ms << " ms\n";
      }
      return bound_checked == bound_ok ? 0 : kExitInternal;
    }
  } catch (const MapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
