#include "jitsched/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "jitsched/error.hpp"
#include "jitsched/generators.hpp"
#include "jitsched/harness.hpp"
#include "jitsched/io.hpp"
#include "jitsched/solvers.hpp"

namespace jitsched {

namespace {

// Overrides the default search budget of `solve` and `verify` when set.
constexpr const char* kBudgetEnv = "JITSCHED_BUDGET";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("write failed for " + path);
}

// Writes to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) out << text;
  else write_file(path, text);
}

std::optional<std::uint64_t> env_budget() {
  const char* v = std::getenv(kBudgetEnv);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0') throw UsageError(std::string(kBudgetEnv) + " is not a non-negative integer");
  return n;
}

Probability parse_probability(const std::string& text) {
  try {
    return Probability::parse(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

struct GenFlags {
  std::uint64_t seed = 0;
  std::string out;
  // mcc
  int k = 3;
  std::size_t per_color = 2;
  std::vector<std::size_t> sizes;
  std::string edge_prob = "0.5";
  bool plant = false;
  // cnf
  std::size_t vars = 3;
  std::size_t clauses = 4;
  bool strict34 = false;
  // rand
  InstanceGenSpec rand;
  std::string eligibility = "1";
  std::string variant = "ELIGIBLE";
};

struct ReduceFlags {
  std::string input;
  std::string mode = "patched";
  bool strict34 = false;
  std::string out;
};

struct SolveFlags {
  std::string input;
  std::string algo = "frontier";
  std::optional<Weight> target;
  std::optional<std::uint64_t> budget;
  bool prune = false;
  std::string out;
};

struct CheckFlags {
  std::string instance;
  std::string schedule;
};

struct VerifyFlags {
  std::string suite;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  int k = 3;
  std::size_t per_color = 2;
  std::vector<std::string> edge_probs{"0.5"};
  std::string mode = "patched";
  bool prune = false;
  std::size_t vars = 3;
  std::size_t clauses = 3;
  std::size_t jobs = 8;
  std::size_t machines = 3;
  Time max_deadline = 12;
  Time max_duration = 12;
  Weight max_weight = 100;
  std::optional<std::uint64_t> budget;
  std::string report;
};

struct RenderFlags {
  std::string instance;
  std::string schedule;
  std::optional<std::size_t> machine;
  bool show_ineligible = false;
  std::string out;
};

int cmd_gen(const std::string& family, const GenFlags& f, std::ostream& out, std::ostream& err) {
  // The summary goes to stderr when the document itself goes to stdout.
  std::ostream& info = f.out.empty() ? err : out;
  if (family == "mcc") {
    GraphGenSpec spec;
    spec.k = f.k;
    spec.sizes = f.sizes.empty() ? std::vector<std::size_t>(static_cast<std::size_t>(std::max(f.k, 0)), f.per_color)
                                 : f.sizes;
    spec.edge_prob = parse_probability(f.edge_prob);
    spec.plant_clique = f.plant;
    spec.seed = f.seed;
    if (spec.sizes.size() != static_cast<std::size_t>(std::max(f.k, 0))) {
      throw UsageError("--sizes needs exactly k entries");
    }
    const auto gen = gen_kpartite(spec);
    emit(f.out, write_graph(gen.graph), out);
    info << "k=" << gen.graph.k() << " vertices=" << gen.graph.vertex_count()
         << " edges=" << gen.graph.edges().size();
    if (gen.planted) {
      info << " planted=";
      for (std::size_t i = 0; i < gen.planted->vertices.size(); ++i) {
        info << (i ? "," : "") << gen.planted->vertices[i];
      }
    }
    info << "\n";
  } else if (family == "cnf") {
    const auto formula = gen_3cnf({f.vars, f.clauses, f.strict34, f.seed});
    emit(f.out, write_dimacs(formula), out);
    info << "vars=" << formula.variable_count << " clauses=" << formula.clauses.size()
         << (formula.is_strict34() ? " strict34" : "") << "\n";
  } else {
    InstanceGenSpec spec = f.rand;
    spec.seed = f.seed;
    spec.eligibility = parse_probability(f.eligibility);
    spec.variant = variant_from_string(f.variant);
    const auto instance = gen_random_instance(spec);
    emit(f.out, write_instance(instance), out);
    info << "n=" << instance.job_count() << " m=" << instance.machine_count()
         << " variant=" << to_string(instance.variant()) << "\n";
  }
  return kExitYes;
}

int cmd_reduce(const std::string& source, const ReduceFlags& f, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(f.input);
  ReductionArtifact artifact = source == "mcc" ? mcc_to_isem(parse_graph(text), mode_from_string(f.mode))
                                               : sat_to_uisum(parse_dimacs(text), f.strict34);
  std::ostream& info = f.out.empty() ? err : out;
  emit(f.out, write_instance(artifact), out);
  info << "n=" << artifact.instance.job_count() << " m=" << artifact.instance.machine_count()
       << " target=" << artifact.target << "\n";
  if (artifact.mode) info << "mode=" << to_string(*artifact.mode) << "\n";
  return kExitYes;
}

void print_stats(std::ostream& out, const SolverStats& s) {
  out << "states_explored=" << s.states_explored << " nodes_expanded=" << s.nodes_expanded;
  if (!s.states_per_layer.empty()) {
    out << " max_layer_states="
        << *std::max_element(s.states_per_layer.begin(), s.states_per_layer.end());
  }
  out << "\n";
}

int cmd_solve(const SolveFlags& f, std::ostream& out) {
  const auto doc = parse_instance_document(read_file(f.input));
  const Instance& instance =
      std::holds_alternative<Instance>(doc) ? std::get<Instance>(doc) : std::get<ReductionArtifact>(doc).instance;
  const auto budget = f.budget ? f.budget : env_budget();

  if (f.algo == "alljobs") {
    DecisionOptions options;
    if (budget) options.node_budget = *budget;
    const auto result = solve_all_jobs_decision(instance, options);
    out << (result.schedule ? "ALLJOBS" : "INFEASIBLE") << "\n";
    print_stats(out, result.stats);
    if (result.schedule && !f.out.empty()) write_file(f.out, write_schedule(*result.schedule));
    return result.schedule ? kExitYes : kExitNo;
  }

  OptResult result;
  if (f.algo == "frontier") {
    FrontierOptions options;
    options.dominance_pruning = f.prune;
    if (budget) options.max_layer_states = *budget;
    result = solve_frontier_dp(instance, options);
  } else if (f.algo == "brute") {
    BruteForceOptions options;
    if (budget) options.max_assignments = *budget;
    result = solve_brute_force(instance, options);
  } else {
    result = solve_single_machine(instance);
  }
  out << "optimum=" << result.optimum << "\n";
  print_stats(out, result.stats);
  if (!f.out.empty()) write_file(f.out, write_schedule(result.schedule));
  if (f.target) {
    const bool met = result.optimum >= *f.target;
    out << "target=" << *f.target << (met ? " met" : " not met") << "\n";
    return met ? kExitYes : kExitNo;
  }
  return kExitYes;
}

int cmd_check(const CheckFlags& f, std::ostream& out) {
  const Instance instance = parse_instance(read_file(f.instance));
  const Schedule schedule = parse_schedule(read_file(f.schedule));
  const auto report = validate_schedule(instance, schedule);
  out << (report.feasible ? "FEASIBLE" : "INFEASIBLE") << " weight=" << report.total_weight
      << " scheduled=" << schedule.scheduled_count() << "\n";
  for (const auto& v : report.violations) out << describe(v) << "\n";
  return report.feasible ? kExitYes : kExitNo;
}

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  const auto budget = f.budget ? f.budget : env_budget();
  HarnessReport report;
  if (f.suite == "lemma1" || f.suite == "equiv-mcc") {
    CliqueSuiteOptions o;
    o.k = f.k;
    o.per_color = f.per_color;
    o.edge_probs.clear();
    for (const auto& p : f.edge_probs) o.edge_probs.push_back(parse_probability(p));
    if (o.edge_probs.empty()) throw UsageError("--edge-prob needs at least one value");
    o.trials = f.trials;
    o.seed = f.seed;
    o.mode = mode_from_string(f.mode);
    o.frontier.dominance_pruning = f.prune;
    if (budget) o.frontier.max_layer_states = *budget;
    report = f.suite == "lemma1" ? verify_lemma1(o) : verify_equiv_mcc(o);
  } else if (f.suite == "lemma3" || f.suite == "equiv-sat") {
    SatSuiteOptions o;
    o.max_variables = f.vars;
    o.max_clauses = f.clauses;
    o.trials = f.trials;
    o.seed = f.seed;
    if (budget) o.decision.node_budget = *budget;
    report = f.suite == "lemma3" ? verify_lemma3(o) : verify_equiv_sat(o);
  } else {
    SolverSuiteOptions o;
    o.max_jobs = f.jobs;
    o.max_machines = f.machines;
    o.max_deadline = f.max_deadline;
    o.max_duration = f.max_duration;
    o.max_weight = f.max_weight;
    o.trials = f.trials;
    o.seed = f.seed;
    report = verify_solvers(o);
  }

  for (const auto& t : report.trials) {
    out << "trial " << t.trial << " seed=" << t.seed << (t.consistent ? " ok " : " FAIL ") << t.summary << "\n";
  }
  out << report.suite << ": " << report.consistent_count() << "/" << report.trials.size() << " consistent\n";
  if (report.consistent()) return kExitYes;
  const std::string path = f.report.empty() ? report.suite + "-counterexamples.json" : f.report;
  write_file(path, report.bundle());
  out << "counterexample bundle: " << path << "\n";
  return kExitNo;
}

int cmd_render(const RenderFlags& f, std::ostream& out) {
  const Instance instance = parse_instance(read_file(f.instance));
  std::optional<Schedule> schedule;
  if (!f.schedule.empty()) schedule = parse_schedule(read_file(f.schedule));
  RenderOptions options{f.machine, f.show_ineligible};
  emit(f.out, render_svg(instance, schedule ? &*schedule : nullptr, options), out);
  return kExitYes;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Just-in-time scheduling: reductions, exact solvers and verification harnesses", "jitsched"};
  app.require_subcommand(1);

  GenFlags gen;
  std::string gen_family;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph, a 3-CNF formula or a random instance");
  gen_cmd->add_option("family", gen_family, "mcc | cnf | rand")->required()->check(CLI::IsMember({"mcc", "cnf", "rand"}));
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output file (default: stdout)");
  gen_cmd->add_option("--k", gen.k, "mcc: number of colors")->check(CLI::Range(2, 64));
  gen_cmd->add_option("--per-color", gen.per_color, "mcc: vertices per color")->check(CLI::Range(1, 100000));
  gen_cmd->add_option("--sizes", gen.sizes, "mcc: explicit per-color sizes")->delimiter(',');
  gen_cmd->add_option("--edge-prob", gen.edge_prob, "mcc: edge probability (0.3 or 3/10)");
  gen_cmd->add_flag("--plant", gen.plant, "mcc: plant a multicolored clique");
  gen_cmd->add_option("--vars", gen.vars, "cnf: variables")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--clauses", gen.clauses, "cnf: clauses")->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--strict34", gen.strict34, "cnf: every variable occurs exactly four times");
  gen_cmd->add_option("--jobs", gen.rand.jobs, "rand: jobs");
  gen_cmd->add_option("--machines", gen.rand.machines, "rand: machines")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-deadline", gen.rand.max_deadline, "rand: largest deadline")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-duration", gen.rand.max_duration, "rand: largest duration")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--max-weight", gen.rand.max_weight, "rand: largest weight")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--eligibility", gen.eligibility, "rand: probability a machine is eligible");
  gen_cmd->add_option("--variant", gen.variant, "rand: ELIGIBLE | UNRELATED | UNRELATED_UNWEIGHTED");

  ReduceFlags reduce;
  std::string reduce_source;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a graph or formula to a scheduling instance");
  reduce_cmd->add_option("source", reduce_source, "mcc | sat")->required()->check(CLI::IsMember({"mcc", "sat"}));
  reduce_cmd->add_option("input", reduce.input, "Graph document or DIMACS file")->required();
  reduce_cmd->add_option("--mode", reduce.mode, "mcc: patched (default) | verbatim")
      ->check(CLI::IsMember({"patched", "verbatim"}));
  reduce_cmd->add_flag("--strict34", reduce.strict34, "sat: require exactly four occurrences per variable");
  reduce_cmd->add_option("--out", reduce.out, "Output file (default: stdout)");

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance exactly");
  solve_cmd->add_option("instance", solve.input, "Instance document")->required();
  solve_cmd->add_option("--algo", solve.algo, "frontier | brute | alljobs | single")
      ->check(CLI::IsMember({"frontier", "brute", "alljobs", "single"}));
  solve_cmd->add_option("--target", solve.target, "Exit 0 iff the optimum reaches this weight");
  solve_cmd->add_option("--budget", solve.budget, "Layer-state, assignment or node budget");
  solve_cmd->add_flag("--prune", solve.prune, "frontier: dominance pruning");
  solve_cmd->add_option("--out", solve.out, "Write the schedule document here");

  CheckFlags check;
  auto* check_cmd = app.add_subcommand("check", "Validate a schedule against an instance");
  check_cmd->add_option("instance", check.instance, "Instance document")->required();
  check_cmd->add_option("schedule", check.schedule, "Schedule document")->required();

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a randomized verification suite");
  verify_cmd->add_option("suite", verify.suite, "lemma1 | equiv-mcc | lemma3 | equiv-sat | solvers")
      ->required()
      ->check(CLI::IsMember({"lemma1", "equiv-mcc", "lemma3", "equiv-sat", "solvers"}));
  verify_cmd->add_option("--trials", verify.trials, "Number of trials");
  verify_cmd->add_option("--seed", verify.seed, "Base seed");
  verify_cmd->add_option("--k", verify.k, "Colors")->check(CLI::Range(2, 16));
  verify_cmd->add_option("--per-color", verify.per_color, "Vertices per color")->check(CLI::Range(1, 1000));
  verify_cmd->add_option("--edge-prob", verify.edge_probs, "Edge probabilities, cycled over trials")->delimiter(',');
  verify_cmd->add_option("--mode", verify.mode, "patched | verbatim")->check(CLI::IsMember({"patched", "verbatim"}));
  verify_cmd->add_flag("--prune", verify.prune, "Frontier DP dominance pruning");
  verify_cmd->add_option("--vars", verify.vars, "Largest variable count")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--clauses", verify.clauses, "Largest clause count")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--jobs", verify.jobs, "solvers: largest job count");
  verify_cmd->add_option("--machines", verify.machines, "solvers: largest machine count")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-deadline", verify.max_deadline, "solvers: largest deadline")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-duration", verify.max_duration, "solvers: largest duration")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--max-weight", verify.max_weight, "solvers: largest weight")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--budget", verify.budget, "Search budget per trial");
  verify_cmd->add_option("--report", verify.report, "Counterexample bundle path");

  RenderFlags render;
  auto* render_cmd = app.add_subcommand("render", "Draw an instance and optional schedule as SVG");
  render_cmd->add_option("instance", render.instance, "Instance document")->required();
  render_cmd->add_option("schedule", render.schedule, "Schedule document");
  render_cmd->add_option("--machine", render.machine, "Draw only this machine");
  render_cmd->add_flag("--show-ineligible", render.show_ineligible, "Also draw ineligible jobs");
  render_cmd->add_option("--out", render.out, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen_family, gen, out, err);
    if (reduce_cmd->parsed()) return cmd_reduce(reduce_source, reduce, out, err);
    if (solve_cmd->parsed()) return cmd_solve(solve, out);
    if (check_cmd->parsed()) return cmd_check(check, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
    return cmd_render(render, out);
  } catch (const ResourceError& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace jitsched
