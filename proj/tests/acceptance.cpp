// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Counterexample bundles are written to the working directory.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "jitsched/generators.hpp"
#include "jitsched/harness.hpp"
#include "jitsched/io.hpp"
#include "jitsched/reductions.hpp"
#include "jitsched/solvers.hpp"

using namespace jitsched;

namespace {

constexpr std::uint64_t kSeed = 20240607;

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

void write_bundle(const HarnessReport& report, const std::string& path) {
  std::ofstream(path) << report.bundle();
}

Verdict clique_witness() {
  const auto t0 = Clock::now();
  std::size_t ok = 0;
  const std::size_t trials = 50;
  HarnessReport failures{"lemma1", {}, {}};
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t seed = trial_seed(kSeed, t);
    Rng rng(seed);
    const int k = 2 + static_cast<int>(t % 2);
    std::vector<std::size_t> sizes;
    for (int c = 0; c < k; ++c) sizes.push_back(std::uniform_int_distribution<std::size_t>(1, 3)(rng));
    const auto gen = gen_kpartite({k, sizes, Probability{1, 2}, true, rng()});
    const auto art = mcc_to_isem(gen.graph, Mode::Patched);
    const auto s = schedule_from_clique(art, *gen.planted);
    const auto r = validate_schedule(art.instance, s);
    if (r.feasible && r.total_weight == art.target && r.total_weight == mcc_target(gen.graph)) {
      ++ok;
    } else {
      failures.counterexamples.push_back({t, seed, "witness infeasible or off target", write_graph(gen.graph),
                                          write_instance(art), write_schedule(s)});
    }
  }
  const double secs = seconds_since(t0);
  if (!failures.consistent()) write_bundle(failures, "acceptance-lemma1-counterexamples.json");
  return {ok == trials && secs <= 5.0,
          std::to_string(ok) + "/" + std::to_string(trials) + " witnesses feasible at target in " + fmt_seconds(secs)};
}

struct CliqueRuns {
  HarnessReport report;
  std::size_t threshold_meeting = 0;
  std::size_t one_per_machine = 0;
  std::size_t bound_ok = 0;
  double max_instance_seconds = 0;
  double total_seconds = 0;
};

CliqueRuns clique_runs() {
  CliqueSuiteOptions o;
  o.k = 3;
  o.per_color = 2;
  o.edge_probs = {Probability{3, 10}, Probability{6, 10}, Probability{1, 1}};
  o.trials = 30;
  o.seed = kSeed;
  o.mode = Mode::Patched;

  CliqueRuns runs;
  const auto t0 = Clock::now();
  runs.report = verify_equiv_mcc(o);
  runs.total_seconds = seconds_since(t0);

  // Per-instance timing, edge-job counts and the layer bound, on the same trials.
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o.seed, t);
    const auto graph =
        gen_kpartite({o.k, {2, 2, 2}, o.edge_probs[t % o.edge_probs.size()], false, seed}).graph;
    const auto art = mcc_to_isem(graph, o.mode);
    const auto ti = Clock::now();
    const auto opt = solve_frontier_dp(art.instance);
    runs.max_instance_seconds = std::max(runs.max_instance_seconds, seconds_since(ti));

    std::uint64_t bound = 1;
    for (std::size_t i = 0; i < art.instance.machine_count(); ++i) bound *= art.instance.job_count() + 1;
    bool within = true;
    for (auto s : opt.stats.states_per_layer) within = within && s <= bound;
    runs.bound_ok += within;

    if (opt.optimum >= art.target) {
      ++runs.threshold_meeting;
      const auto per_machine = edge_jobs_per_machine(art, opt.schedule);
      std::size_t total = 0;
      bool one_each = per_machine.size() == 3;
      for (auto c : per_machine) {
        total += c;
        one_each = one_each && c == 1;
      }
      runs.one_per_machine += one_each && total == 3;
    }
  }
  return runs;
}

Verdict clique_equivalence(const CliqueRuns& runs) {
  const auto& r = runs.report;
  Verdict v;
  v.pass = r.consistent() && runs.max_instance_seconds <= 60.0 && runs.total_seconds <= 20 * 60.0;
  v.detail = std::to_string(r.consistent_count()) + "/" + std::to_string(r.trials.size()) +
             " trials consistent (max instance " + fmt_seconds(runs.max_instance_seconds) + ")";
  if (!r.consistent()) {
    const std::string path = "acceptance-equiv-mcc-counterexamples.json";
    write_bundle(r, path);
    v.detail += "; first: trial " + std::to_string(r.counterexamples.front().trial) + ": " +
                r.counterexamples.front().reason + "; bundle " + path;
  }
  return v;
}

Verdict edge_job_counts(const CliqueRuns& runs) {
  return {runs.one_per_machine == runs.threshold_meeting,
          std::to_string(runs.one_per_machine) + "/" + std::to_string(runs.threshold_meeting) +
              " threshold-meeting optima with exactly one edge job per edge-selection machine"};
}

Verdict assignment_witness() {
  SatSuiteOptions o;
  o.max_variables = 3;
  o.max_clauses = 3;
  o.trials = 100;
  o.seed = kSeed;
  const auto t0 = Clock::now();
  const auto r = verify_lemma3(o);
  const double secs = seconds_since(t0);
  if (!r.consistent()) write_bundle(r, "acceptance-lemma3-counterexamples.json");
  return {r.consistent() && r.trials.size() == 100 && secs <= 5.0,
          std::to_string(r.consistent_count()) + "/" + std::to_string(r.trials.size()) +
              " satisfiable formulas fully scheduled in " + fmt_seconds(secs)};
}

Verdict sat_equivalence() {
  SatSuiteOptions o;
  o.max_variables = 3;
  o.max_clauses = 2;
  o.trials = 1;
  double worst = 0;
  HarnessReport all{"equiv-sat", {}, {}};
  for (std::size_t t = 0; t < 100; ++t) {
    o.seed = trial_seed(kSeed, t);
    const auto t0 = Clock::now();
    auto r = verify_equiv_sat(o);
    worst = std::max(worst, seconds_since(t0));
    for (auto& v : r.trials) all.trials.push_back(v);
    for (auto& c : r.counterexamples) all.counterexamples.push_back(c);
  }
  if (!all.consistent()) write_bundle(all, "acceptance-equiv-sat-counterexamples.json");
  return {all.consistent() && worst <= 10.0, std::to_string(all.consistent_count()) +
                                                 "/100 agree with the SAT oracle (max instance " +
                                                 fmt_seconds(worst) + ")"};
}

Verdict solver_agreement() {
  SolverSuiteOptions o;
  o.trials = 500;
  o.seed = kSeed;
  const auto r = verify_solvers(o);
  if (!r.consistent()) write_bundle(r, "acceptance-solvers-counterexamples.json");
  std::size_t single = 0;
  for (const auto& t : r.trials) single += t.summary.find("single=") != std::string::npos;
  return {r.consistent(), std::to_string(r.consistent_count()) + "/500 agree with brute force (" +
                              std::to_string(single) + " single-machine instances)"};
}

Verdict verbatim_regression() {
  const KPartiteGraph g({{"a"}, {"b"}}, {{"a", "b"}});
  const CliqueWitness x{{"a", "b"}};
  const auto verbatim = mcc_to_isem(g, Mode::Verbatim);
  const auto rv = validate_schedule(verbatim.instance, schedule_from_clique(verbatim, x));
  const auto patched = mcc_to_isem(g, Mode::Patched);
  const auto rp = validate_schedule(patched.instance, schedule_from_clique(patched, x));

  bool ok = rv.violations.size() == 1;
  if (ok) {
    const auto& v = rv.violations[0];
    ok = v.kind == Violation::Kind::Conflict && v.machine == 0 &&
         std::set<std::string>{v.job, v.other_job} == std::set<std::string>{"e[a,b]", "v[a,2]"};
  }
  ok = ok && rp.feasible && rp.violations.empty() && rp.total_weight == 243;
  return {ok, "verbatim violations=" + std::to_string(rv.violations.size()) +
                  (rv.violations.empty() ? "" : " (" + describe(rv.violations[0]) + ")") +
                  "; patched violations=" + std::to_string(rp.violations.size()) +
                  " weight=" + std::to_string(rp.total_weight)};
}

Verdict construction_shapes() {
  std::size_t graphs = 0, formulas = 0, bad = 0;
  for (std::size_t t = 0; t < 60; ++t) {
    const std::uint64_t seed = trial_seed(kSeed + 8, t);
    Rng rng(seed);
    const int k = 2 + static_cast<int>(t % 3);
    std::vector<std::size_t> sizes;
    for (int c = 0; c < k; ++c) sizes.push_back(std::uniform_int_distribution<std::size_t>(1, 3)(rng));
    const auto g = gen_kpartite({k, sizes, Probability{1, 2}, t % 2 == 0, rng()}).graph;
    const auto art = mcc_to_isem(g);
    const auto c = weight_constants(g);
    const Weight n = static_cast<Weight>(g.vertex_count());
    bool ok = c.c1 == n + 1 && c.c2 == (k - 1) * n * c.c1 + n + 1 && c.c2 > (k - 1) * n * c.c1 + n &&
              c.c3 == (k * n + k * k * n) * n * c.c2 + 1 && c.c3 > (k * n + k * k * n) * n * c.c2;
    for (const auto& j : art.instance.jobs()) ok = ok && j.weight <= n * c.c2 + c.c3;
    ok = ok && art.instance.machine_count() == static_cast<std::size_t>(k * (k - 1) / 2 + 1);
    bad += !ok;
    ++graphs;
  }
  for (std::size_t t = 0; t < 60; ++t) {
    const std::uint64_t seed = trial_seed(kSeed + 9, t);
    const bool strict = t % 3 == 0;
    const std::size_t a = strict ? 3 * (1 + t % 2) : 1 + t % 5;
    const std::size_t b = strict ? 4 * (1 + t % 2) : 1 + (t / 5) % 5;
    const auto f = gen_3cnf({a, b, strict, seed});
    const auto art = sat_to_uisum(f, strict);
    std::size_t dummies = 0;
    for (const auto& r : art.job_roles) dummies += std::holds_alternative<DummyJobRole>(r);
    const bool ok = dummies == art.instance.machine_count() && dummies == 2 * a + 2 * b &&
                    art.target == static_cast<Weight>(4 * a + 5 * b) &&
                    art.instance.job_count() == 4 * a + 5 * b;
    bad += !ok;
    ++formulas;
  }
  return {bad == 0, std::to_string(graphs) + " graphs and " + std::to_string(formulas) + " formulas checked, " +
                        std::to_string(bad) + " violations"};
}

Verdict format_round_trips() {
  std::size_t failures = 0;
  const auto same = [&](const std::string& written, const std::string& rewritten, bool equal) {
    failures += !(equal && written == rewritten);
  };
  for (std::size_t t = 0; t < 200; ++t) {
    const std::uint64_t seed = trial_seed(kSeed + 10, t);
    Rng rng(seed);

    InstanceGenSpec is;
    is.jobs = std::uniform_int_distribution<std::size_t>(0, 10)(rng);
    is.machines = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    is.eligibility = Probability{2, 3};
    is.variant = t % 2 ? Variant::Unrelated : Variant::Eligible;
    is.seed = rng();
    const auto inst = gen_random_instance(is);
    const auto inst_text = write_instance(inst);
    const auto inst_back = parse_instance(inst_text);
    same(inst_text, write_instance(inst_back), inst_back == inst);

    const int k = 2 + static_cast<int>(t % 3);
    const auto g = gen_kpartite({k, std::vector<std::size_t>(static_cast<std::size_t>(k), 1 + t % 3),
                                 Probability{1, 2}, t % 2 == 0, rng()})
                       .graph;
    const auto g_text = write_graph(g);
    const auto g_back = parse_graph(g_text);
    same(g_text, write_graph(g_back), g_back == g);

    const auto f = gen_3cnf({1 + t % 4, 1 + t % 6, false, rng()});
    const auto f_text = write_dimacs(f);
    const auto f_back = parse_dimacs(f_text);
    same(f_text, write_dimacs(f_back), f_back == f);

    const auto art = t % 2 ? sat_to_uisum(f) : mcc_to_isem(g, t % 4 == 0 ? Mode::Verbatim : Mode::Patched);
    const auto a_text = write_instance(art);
    const auto a_back = parse_artifact(a_text);
    same(a_text, write_instance(a_back), a_back == art);

    const auto sched = solve_frontier_dp(inst).schedule;
    const auto s_text = write_schedule(sched);
    const auto s_back = parse_schedule(s_text);
    same(s_text, write_schedule(s_back), s_back == sched);
  }
  return {failures == 0, "200 each of instances, artifacts, graphs, schedules, DIMACS; " +
                             std::to_string(failures) + " mismatches"};
}

Verdict state_bound(const CliqueRuns& runs) {
  return {runs.bound_ok == runs.report.trials.size(),
          std::to_string(runs.bound_ok) + "/" + std::to_string(runs.report.trials.size()) +
              " instances with every layer within (n+1)^m states"};
}

}  // namespace

int main() {
  int failed = 0;
  const auto report = [&](int id, const std::string& name, const std::function<Verdict()>& check) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << v.detail
              << std::endl;
  };

  std::optional<CliqueRuns> runs;
  std::string runs_error;
  try {
    runs = clique_runs();
  } catch (const std::exception& e) {
    runs_error = e.what();
  }
  const auto with_runs = [&](Verdict (*f)(const CliqueRuns&)) {
    return [&, f]() -> Verdict {
      if (!runs) return {false, "clique runs failed: " + runs_error};
      return f(*runs);
    };
  };

  report(1, "clique witness schedules", clique_witness);
  report(2, "clique equivalence and extraction", with_runs(clique_equivalence));
  report(3, "one edge job per edge-selection machine", with_runs(edge_job_counts));
  report(4, "assignment witness schedules", assignment_witness);
  report(5, "satisfiability equivalence", sat_equivalence);
  report(6, "solver oracle agreement", solver_agreement);
  report(7, "verbatim-mode regression", verbatim_regression);
  report(8, "construction shapes", construction_shapes);
  report(9, "format round-trips", format_round_trips);
  report(10, "frontier state bound", with_runs(state_bound));

  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
