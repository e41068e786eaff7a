#include "jitsched/harness.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "jitsched/io.hpp"

namespace jitsched {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t pow_saturating(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return UINT64_MAX;
  }
  return r;
}

std::size_t draw_in(Rng& rng, std::size_t hi) {
  return 1 + static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, hi - 1)(rng));
}

CnfFormula sat_trial_formula(const SatSuiteOptions& o, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t alpha = draw_in(rng, std::max<std::size_t>(o.max_variables, 1));
  const std::size_t beta = draw_in(rng, std::max<std::size_t>(o.max_clauses, 1));
  return gen_3cnf({alpha, beta, false, rng()});
}

std::string assignment_str(const TruthAssignment& a) {
  std::string s;
  for (bool b : a) s += b ? '1' : '0';
  return s;
}

}  // namespace

std::size_t HarnessReport::consistent_count() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const TrialVerdict& t) { return t.consistent; }));
}

std::string HarnessReport::bundle() const {
  auto embed = [](const std::string& text) -> json {
    if (text.empty()) return nullptr;
    if (text.front() == '{') return json::parse(text);
    return text;
  };
  json doc;
  doc["suite"] = suite;
  doc["trials"] = trials.size();
  json list = json::array();
  for (const auto& c : counterexamples) {
    json o;
    o["trial"] = c.trial;
    o["seed"] = c.seed;
    o["reason"] = c.reason;
    o["source"] = embed(c.source);
    o["artifact"] = embed(c.artifact);
    o["schedule"] = embed(c.schedule);
    list.push_back(std::move(o));
  }
  doc["counterexamples"] = std::move(list);
  return doc.dump(2) + "\n";
}

HarnessReport verify_lemma1(const CliqueSuiteOptions& o) {
  HarnessReport report{"lemma1", {}, {}};
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o.seed, t);
    GraphGenSpec spec{o.k, std::vector<std::size_t>(static_cast<std::size_t>(o.k), o.per_color),
                      o.edge_probs[t % o.edge_probs.size()], true, seed};
    const auto gen = gen_kpartite(spec);
    const auto artifact = mcc_to_isem(gen.graph, o.mode);
    const auto schedule = schedule_from_clique(artifact, *gen.planted);
    const auto check = validate_schedule(artifact.instance, schedule);
    const bool ok = check.feasible && check.total_weight == artifact.target;
    std::string summary = "n=" + std::to_string(artifact.instance.job_count()) +
                          " weight=" + std::to_string(check.total_weight) + " target=" + std::to_string(artifact.target) +
                          (check.feasible ? " feasible" : " INFEASIBLE (" + std::to_string(check.violations.size()) +
                                                              " violations)");
    report.trials.push_back({t, seed, ok, summary});
    if (!ok) {
      std::string reason = "witness schedule " + summary;
      for (const auto& v : check.violations) reason += "; " + describe(v);
      report.counterexamples.push_back(
          {t, seed, reason, write_graph(gen.graph), write_instance(artifact), write_schedule(schedule)});
    }
  }
  return report;
}

HarnessReport verify_equiv_mcc(const CliqueSuiteOptions& o) {
  HarnessReport report{"equiv-mcc", {}, {}};
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o.seed, t);
    GraphGenSpec spec{o.k, std::vector<std::size_t>(static_cast<std::size_t>(o.k), o.per_color),
                      o.edge_probs[t % o.edge_probs.size()], false, seed};
    const auto graph = gen_kpartite(spec).graph;
    const auto artifact = mcc_to_isem(graph, o.mode);
    const auto opt = solve_frontier_dp(artifact.instance, o.frontier);
    const auto clique = brute_force_clique(graph);
    const bool meets = opt.optimum >= artifact.target;

    std::vector<std::string> problems;
    if (meets != clique.has_value()) {
      problems.push_back(meets ? "optimum meets target but the graph has no multicolored clique"
                               : "graph has a multicolored clique but the optimum is below target");
    }
    if (meets) {
      const auto extraction = clique_from_schedule(artifact, opt.schedule);
      if (!extraction.clique) problems.push_back("clique extraction failed: " + extraction.diagnostics);
      const auto per_machine = edge_jobs_per_machine(artifact, opt.schedule);
      if (std::any_of(per_machine.begin(), per_machine.end(), [](std::size_t c) { return c != 1; })) {
        std::string counts;
        for (std::size_t c : per_machine) counts += " " + std::to_string(c);
        problems.push_back("edge jobs per edge-selection machine:" + counts);
      }
    }
    const std::uint64_t bound =
        pow_saturating(artifact.instance.job_count() + 1, artifact.instance.machine_count());
    const std::uint64_t widest =
        opt.stats.states_per_layer.empty()
            ? 0
            : *std::max_element(opt.stats.states_per_layer.begin(), opt.stats.states_per_layer.end());
    if (widest > bound) problems.push_back("layer with " + std::to_string(widest) + " states exceeds (n+1)^m");

    std::string summary = "edge_prob=" + spec.edge_prob.str() + " n=" + std::to_string(artifact.instance.job_count()) +
                          " optimum=" + std::to_string(opt.optimum) + " target=" + std::to_string(artifact.target) +
                          " clique=" + (clique ? "yes" : "no") + " max_layer_states=" + std::to_string(widest);
    report.trials.push_back({t, seed, problems.empty(), summary});
    if (!problems.empty()) {
      std::string reason;
      for (const auto& p : problems) reason += (reason.empty() ? "" : "; ") + p;
      report.counterexamples.push_back(
          {t, seed, reason, write_graph(graph), write_instance(artifact), write_schedule(opt.schedule)});
    }
  }
  return report;
}

HarnessReport verify_lemma3(const SatSuiteOptions& o) {
  HarnessReport report{"lemma3", {}, {}};
  const std::size_t max_attempts = 1000 * std::max<std::size_t>(o.trials, 1);
  for (std::size_t attempt = 0; report.trials.size() < o.trials && attempt < max_attempts; ++attempt) {
    const std::uint64_t seed = trial_seed(o.seed, attempt);
    const auto formula = sat_trial_formula(o, seed);
    const auto assignment = brute_force_sat(formula);
    if (!assignment) continue;
    const auto artifact = sat_to_uisum(formula);
    const auto schedule = schedule_from_assignment(artifact, *assignment);
    const auto check = validate_schedule(artifact.instance, schedule);
    const std::size_t n = artifact.instance.job_count();
    bool ok = check.feasible && schedule.scheduled_count() == n &&
              n == 4 * formula.variable_count + 5 * formula.clauses.size();
    std::string extra;
    if (ok) {
      const auto back = assignment_from_schedule(artifact, schedule);
      ok = satisfies(formula, back);
      if (!ok) extra = " extracted assignment " + assignment_str(back) + " does not satisfy";
    }
    const std::string summary = "alpha=" + std::to_string(formula.variable_count) +
                                " beta=" + std::to_string(formula.clauses.size()) + " n=" + std::to_string(n) +
                                " scheduled=" + std::to_string(schedule.scheduled_count()) +
                                (check.feasible ? " feasible" : " INFEASIBLE") + extra;
    report.trials.push_back({report.trials.size(), seed, ok, summary});
    if (!ok) {
      std::string reason = summary;
      for (const auto& v : check.violations) reason += "; " + describe(v);
      report.counterexamples.push_back(
          {report.trials.size() - 1, seed, reason, write_dimacs(formula), write_instance(artifact), write_schedule(schedule)});
    }
  }
  return report;
}

HarnessReport verify_equiv_sat(const SatSuiteOptions& o) {
  HarnessReport report{"equiv-sat", {}, {}};
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o.seed, t);
    const auto formula = sat_trial_formula(o, seed);
    const auto artifact = sat_to_uisum(formula);
    const auto decision = solve_all_jobs_decision(artifact.instance, o.decision);
    const auto oracle = brute_force_sat(formula);

    std::vector<std::string> problems;
    if (decision.schedule.has_value() != oracle.has_value()) {
      problems.push_back(decision.schedule ? "all jobs schedulable but the formula is unsatisfiable"
                                           : "formula satisfiable but no all-jobs schedule found");
    }
    std::string extracted;
    if (decision.schedule) {
      const auto back = assignment_from_schedule(artifact, *decision.schedule);
      extracted = assignment_str(back);
      if (!satisfies(formula, back)) problems.push_back("extracted assignment " + extracted + " does not satisfy");
    }
    const std::string summary = "alpha=" + std::to_string(formula.variable_count) +
                                " beta=" + std::to_string(formula.clauses.size()) +
                                " alljobs=" + (decision.schedule ? "yes" : "no") + " sat=" + (oracle ? "yes" : "no") +
                                (extracted.empty() ? "" : " extracted=" + extracted) +
                                " nodes=" + std::to_string(decision.stats.nodes_expanded);
    report.trials.push_back({t, seed, problems.empty(), summary});
    if (!problems.empty()) {
      std::string reason;
      for (const auto& p : problems) reason += (reason.empty() ? "" : "; ") + p;
      report.counterexamples.push_back({t, seed, reason, write_dimacs(formula), write_instance(artifact),
                                        decision.schedule ? write_schedule(*decision.schedule) : ""});
    }
  }
  return report;
}

HarnessReport verify_solvers(const SolverSuiteOptions& o) {
  HarnessReport report{"solvers", {}, {}};
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o.seed, t);
    Rng rng(seed);
    InstanceGenSpec spec;
    spec.jobs = std::uniform_int_distribution<std::size_t>(0, o.max_jobs)(rng);
    spec.machines = draw_in(rng, o.max_machines);
    spec.max_deadline = o.max_deadline;
    spec.max_duration = o.max_duration;
    spec.max_weight = o.max_weight;
    spec.eligibility = Probability{3, 4};
    spec.variant = t % 2 == 0 ? Variant::Eligible : Variant::Unrelated;
    spec.seed = rng();
    const auto instance = gen_random_instance(spec);

    const auto dp = solve_frontier_dp(instance);
    const auto pruned = solve_frontier_dp(instance, FrontierOptions{true});
    const auto brute = solve_brute_force(instance);
    std::vector<std::string> problems;
    if (dp.optimum != brute.optimum) problems.push_back("frontier DP optimum differs from brute force");
    if (pruned.optimum != brute.optimum) problems.push_back("pruned frontier DP optimum differs from brute force");
    for (const auto* r : {&dp, &pruned, &brute}) {
      const auto v = validate_schedule(instance, r->schedule);
      if (!v.feasible || v.total_weight != r->optimum) problems.push_back("returned schedule does not validate");
    }
    std::string single;
    if (instance.machine_count() == 1) {
      const auto s = solve_single_machine(instance);
      single = " single=" + std::to_string(s.optimum);
      if (s.optimum != brute.optimum) problems.push_back("single-machine DP differs from brute force");
    }
    const std::string summary = "n=" + std::to_string(instance.job_count()) + " m=" +
                                std::to_string(instance.machine_count()) + " frontier=" + std::to_string(dp.optimum) +
                                " brute=" + std::to_string(brute.optimum) + single;
    report.trials.push_back({t, seed, problems.empty(), summary});
    if (!problems.empty()) {
      std::string reason;
      for (const auto& p : problems) reason += (reason.empty() ? "" : "; ") + p;
      report.counterexamples.push_back({t, seed, reason, "", write_instance(instance), write_schedule(dp.schedule)});
    }
  }
  return report;
}

}  // namespace jitsched
