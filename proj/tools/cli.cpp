#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include "sweep.hpp"
#include "version.hpp"
#include "xorsat/errors.hpp"
#include "xorsat/grover.hpp"
#include "xorsat/hamiltonian.hpp"
#include "xorsat/instance.hpp"
#include "xorsat/reduction.hpp"
#include "xorsat/solvers.hpp"

namespace xorsat::cli {
namespace {

using Report = nlohmann::ordered_json;

struct Common {
  std::uint64_t seed = 1;
  bool json = false;
  std::string out_path;
  std::size_t threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_flag("--json", c.json, "Machine-readable output");
  cmd->add_option("--out", c.out_path, "Write output to this file instead of stdout");
  cmd->add_option("--threads", c.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Human form: one `key: value` line per field, arrays space-separated. The
// JSON form prints the same object, so both carry identical numbers.
void render(std::ostream& out, const Report& report, bool json) {
  if (json) {
    out << report.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : report.items()) {
    out << key << ':';
    if (value.is_array()) {
      for (const auto& v : value) {
        out << ' ' << (v.is_string() ? v.get<std::string>() : v.dump());
      }
    } else {
      out << ' ' << (value.is_string() ? value.get<std::string>() : value.dump());
    }
    out << '\n';
  }
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    out.push_back(i + 1);
  }
  return out;
}

Report instance_header(const Instance& inst) {
  const LinearSystem sys = build_linear_system(inst);
  const std::size_t m_prime = rank(sys.a);
  Report r;
  r["n"] = inst.n;
  r["M"] = inst.clauses.size();
  r["m_prime"] = m_prime;
  r["k"] = inst.n - m_prime;
  r["delta_k"] = inst.clauses.size() - m_prime;
  return r;
}

void add_outcome(Report& r, const SolveOutcome& out) {
  if (out.sat()) {
    r["status"] = "SAT";
    r["assignment"] = out.solution->to_string();
  } else if (out.xor_certified) {
    r["status"] = "UNSAT (XOR-certified)";
    r["witness_clauses"] = one_based(out.witness);
  } else {
    r["status"] = "UNSAT";
  }
  r["queries"] = out.queries;
}

// Puts status first so the human report leads with the answer.
Report with_status_first(const Report& header, const Report& body) {
  Report r;
  if (body.contains("status")) {
    r["status"] = body["status"];
  }
  for (const auto& [key, value] : body.items()) {
    if (key != "status") {
      r[key] = value;
    }
  }
  for (const auto& [key, value] : header.items()) {
    r[key] = value;
  }
  return r;
}

struct GenOptions {
  std::size_t n = 0;
  std::optional<double> alpha;
  std::optional<std::size_t> m;
  std::size_t p = 3;
  std::size_t q = 1;
  double negation_prob = 0.5;
  std::size_t min_degree = 2;
  std::string graph;
  double edge_prob = 0.5;
};

std::string cmd_gen(const GenOptions& o, const Common& c) {
  if (!o.graph.empty()) {
    Graph g;
    if (o.graph == "cubic") {
      g = random_cubic_graph(o.n, c.seed);
    } else if (o.graph == "bipartite-cubic") {
      g = random_bipartite_cubic_graph(o.n, c.seed);
    } else if (o.graph == "gnp") {
      g = random_connected_graph(o.n, o.edge_prob, c.seed);
    } else if (o.graph == "complete") {
      g = complete_graph(o.n);
    } else if (o.graph == "cycle") {
      g = cycle_graph(o.n);
    } else {
      g = petersen_graph();
    }
    return emit_graph(g);
  }
  GeneratorParams params;
  params.n = o.n;
  params.m = o.m ? *o.m : static_cast<std::size_t>(std::llround(o.alpha.value_or(1.0) * static_cast<double>(o.n)));
  params.p = o.p;
  params.q = o.q;
  params.negation_prob = o.negation_prob;
  params.min_degree = o.min_degree;
  return emit_instance(generate_random(params, c.seed));
}

Report cmd_solve(const Instance& inst) {
  Report body;
  add_outcome(body, solve_enumerate(inst));
  return with_status_first(instance_header(inst), body);
}

Report cmd_count(const Instance& inst, const std::string& method) {
  Report body;
  std::uint64_t v = 0;
  if (method == "backtrack") {
    const auto [count, stats] = backtrack_count(inst);
    v = count;
    body["tree_nodes"] = stats.total_nodes;
  } else {
    v = count_enumerate(inst);
  }
  body["status"] = "COUNT=" + std::to_string(v);
  body["count"] = v;
  body["method"] = method;
  return with_status_first(instance_header(inst), body);
}

Report cmd_backtrack(const Instance& inst, std::size_t perm_trials, std::uint64_t seed) {
  Report body;
  const ReduceResult rr = reduce(inst);
  if (const auto* bad = std::get_if<XorInfeasible>(&rr)) {
    SolveOutcome out;
    out.xor_certified = true;
    out.witness = bad->witness;
    add_outcome(body, out);
    body["tree_nodes"] = 0;
    return with_status_first(instance_header(inst), body);
  }
  Reduction r = std::get<Reduction>(rr);
  if (r.k() > kEnumerateMaxK) {
    throw GuardExceeded("reduced dimension k", r.k(), kEnumerateMaxK);
  }
  if (perm_trials > 0) {
    body["score_before"] = permutation_score(inst, r.standard);
    r = optimize_permutation(inst, r, perm_trials, seed);
    body["score_after"] = permutation_score(inst, r.standard);
  }
  const auto [out, stats] = backtrack_solve(inst, r);
  add_outcome(body, out);
  body["tree_nodes"] = stats.total_nodes;
  body["nodes_per_depth"] = stats.nodes_per_depth;
  return with_status_first(instance_header(inst), body);
}

Report cmd_grover(const Instance& inst, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const SolveOutcome out = grover_search_unknown(inst, rng);
  Report body;
  add_outcome(body, out);
  body["iterations"] = out.queries;
  body["seed"] = seed;
  return with_status_first(instance_header(inst), body);
}

Report cmd_grover_cost(const Instance& inst) {
  Report r = instance_header(inst);
  const ReduceResult rr = reduce(inst);
  if (const auto* bad = std::get_if<XorInfeasible>(&rr)) {
    Report body;
    body["status"] = "UNSAT (XOR-certified)";
    body["witness_clauses"] = one_based(bad->witness);
    body["decision_queries"] = 0;
    return with_status_first(r, body);
  }
  const Reduction& red = std::get<Reduction>(rr);
  r["decision_queries"] = query_cost_decision(inst.n, red.m_prime);
  if (red.k() <= kEnumerateMaxK) {
    const std::uint64_t v = backtrack_count(inst, red).first;
    r["solutions"] = v;
    r["counting_queries"] = query_cost_count(inst.n, red.m_prime, v);
  }
  const ResourceReport res = oracle_resources(inst, red);
  r["ancillas"] = res.ancillas;
  r["gates_module_i"] = res.gates_module_i;
  r["gates_module_ii"] = res.gates_module_ii;
  r["gates_module_iii"] = res.gates_module_iii;
  r["gates_module_iv"] = res.gates_module_iv;
  r["total_gates"] = res.total_gates;
  r["gate_bound"] = kGateBoundConstant * static_cast<double>(inst.n * inst.n);
  return r;
}

Report cmd_hc(const Graph& g) {
  Report r;
  const auto sol = solve_hc(g);
  r["status"] = sol ? "HAMILTONIAN" : "NO HAMILTONIAN CYCLE";
  if (sol) {
    std::vector<std::string> edges;
    for (std::size_t e : sol->support()) {
      edges.push_back(std::to_string(g.edges[e].first + 1) + "-" + std::to_string(g.edges[e].second + 1));
    }
    r["cycle_edges"] = edges;
  }
  r["nodes"] = g.n_nodes;
  r["edges"] = g.edges.size();
  r["components"] = connected_components(g);
  r["rank"] = hc_rank_check(g);
  r["k"] = g.edges.size() - hc_rank_check(g);
  r["cost_exponent"] = hc_cost_exponent(g);
  return r;
}

struct SweepOptions {
  std::string problem = "1in3";
  std::vector<std::size_t> n_list;
  std::optional<double> alpha;
  std::size_t samples = 1000;
  std::size_t p = 3;
  std::size_t q = 1;
  double negation_prob = 0.5;
  std::size_t perm_trials = 100;
  bool timing = false;
};

SweepConfig make_config(const SweepOptions& o, const Common& c, bool tree) {
  SweepConfig cfg;
  if (o.problem == "1in3") {
    cfg.problem = Problem::kOcc1in3;
    cfg.p = 3;
    cfg.q = 1;
  } else if (o.problem == "2in4") {
    cfg.problem = Problem::kOcc2in4;
    cfg.p = 4;
    cfg.q = 2;
  } else {
    cfg.problem = Problem::kCustom;
    cfg.p = o.p;
    cfg.q = o.q;
  }
  // Default densities: the satisfiability thresholds for the tree sweep,
  // alpha = 1 for the kernel sweep.
  double fallback = 1.0;
  if (tree) {
    fallback = cfg.problem == Problem::kOcc2in4 ? 0.707 : 0.789;
  }
  cfg.alpha = o.alpha.value_or(fallback);
  cfg.n_list = o.n_list;
  cfg.samples = o.samples;
  cfg.seed = c.seed;
  cfg.negation_prob = o.negation_prob;
  cfg.perm_trials = o.perm_trials;
  cfg.threads = c.threads;
  cfg.timing = o.timing;
  cfg.validate();
  return cfg;
}

void add_sweep_options(CLI::App* cmd, SweepOptions& o) {
  cmd->add_option("--problem", o.problem, "Ensemble: 1in3, 2in4 or custom")
      ->check(CLI::IsMember({"1in3", "2in4", "custom"}));
  cmd->add_option("--n", o.n_list, "Variable counts, comma-separated")->delimiter(',')->required();
  cmd->add_option("--alpha", o.alpha, "Clause density M/n");
  cmd->add_option("--samples", o.samples, "Instances per n");
  cmd->add_option("--p", o.p, "Clause arity for --problem custom");
  cmd->add_option("--q", o.q, "Occupation for --problem custom");
  cmd->add_option("--negation-prob", o.negation_prob, "Probability of negating a literal");
  cmd->add_flag("--timing", o.timing, "Fill the wall_time_ms column");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduced-space solvers for q-in-p occupation problems", "xorsat"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("xorsat ") + kVersion);

  Common common;
  std::string input;
  GenOptions gen;
  std::string count_method = "enumerate";
  std::size_t perm_trials = 0;
  SweepOptions sweep;

  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance or graph");
  add_common(gen_cmd, common);
  gen_cmd->add_option("--n", gen.n, "Variables (or nodes with --graph)")->required();
  auto* alpha_opt = gen_cmd->add_option("--alpha", gen.alpha, "Clause density M/n");
  gen_cmd->add_option("--m", gen.m, "Clause count")->excludes(alpha_opt);
  gen_cmd->add_option("--p", gen.p, "Clause arity");
  gen_cmd->add_option("--q", gen.q, "Occupation number");
  gen_cmd->add_option("--negation-prob", gen.negation_prob, "Probability of negating a literal");
  gen_cmd->add_option("--min-degree", gen.min_degree, "Minimum occurrences per variable");
  gen_cmd->add_option("--graph", gen.graph, "Emit a graph instead")
      ->check(CLI::IsMember({"cubic", "bipartite-cubic", "gnp", "complete", "cycle", "petersen"}));
  gen_cmd->add_option("--edge-prob", gen.edge_prob, "Edge probability for --graph gnp");

  auto with_input = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, common);
    cmd->add_option("input", input, "Input file, or - for stdin")->required();
    return cmd;
  };
  auto* solve_cmd = with_input("solve", "Decide by enumerating the reduced space");
  auto* count_cmd = with_input("count", "Count solutions");
  count_cmd->add_option("--method", count_method, "enumerate or backtrack")
      ->check(CLI::IsMember({"enumerate", "backtrack"}));
  auto* backtrack_cmd = with_input("backtrack", "Decide by backtracking over the reduced space");
  backtrack_cmd->add_option("--perm-trials", perm_trials, "Restarts of the permutation search (0 = off)");
  auto* grover_cmd = with_input("grover", "Simulated Grover search with unknown solution count");
  auto* cost_cmd = with_input("grover-cost", "Query costs and oracle resource counts");
  auto* hc_cmd = with_input("hc", "Hamiltonian cycle search on a graph file");

  auto* kernel_cmd = app.add_subcommand("sweep-kernel", "Rank excess over a random ensemble (CSV)");
  add_common(kernel_cmd, common);
  add_sweep_options(kernel_cmd, sweep);
  auto* tree_cmd = app.add_subcommand("sweep-tree", "Backtracking tree sizes over a random ensemble (CSV)");
  add_common(tree_cmd, common);
  add_sweep_options(tree_cmd, sweep);
  tree_cmd->add_option("--perm-trials", sweep.perm_trials, "Restarts of the permutation search");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!common.out_path.empty()) {
    file.open(common.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << common.out_path << '\n';
      return kExitFailure;
    }
    sink = &file;
  }

  try {
    if (gen_cmd->parsed()) {
      *sink << cmd_gen(gen, common);
    } else if (hc_cmd->parsed()) {
      render(*sink, cmd_hc(parse_graph(read_input(input))), common.json);
    } else if (kernel_cmd->parsed()) {
      const SweepConfig cfg = make_config(sweep, common, false);
      write_kernel_csv(*sink, cfg, run_kernel_sweep(cfg));
    } else if (tree_cmd->parsed()) {
      const SweepConfig cfg = make_config(sweep, common, true);
      write_tree_csv(*sink, cfg, run_tree_sweep(cfg));
    } else {
      const Instance inst = parse_instance(read_input(input));
      Report report;
      if (solve_cmd->parsed()) {
        report = cmd_solve(inst);
      } else if (count_cmd->parsed()) {
        report = cmd_count(inst, count_method);
      } else if (backtrack_cmd->parsed()) {
        report = cmd_backtrack(inst, perm_trials, common.seed);
      } else if (grover_cmd->parsed()) {
        report = cmd_grover(inst, common.seed);
      } else if (cost_cmd->parsed()) {
        report = cmd_grover_cost(inst);
      }
      render(*sink, report, common.json);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const GuardExceeded& e) {
    err << e.what() << '\n';
    return kExitGuard;
  } catch (const GenerationFailure& e) {
    err << "generation failed: " << e.what() << '\n';
    return kExitGeneration;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  sink->flush();
  return kExitOk;
}

}  // namespace xorsat::cli
