#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jitsched/generators.hpp"
#include "jitsched/reductions.hpp"
#include "jitsched/solvers.hpp"

namespace jitsched {

struct TrialVerdict {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool consistent = true;
  std::string summary;
};

/// Replayable evidence of a failed trial. Documents are stored as the text
/// the sched-io writers produce.
struct Counterexample {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string reason;
  std::string source;  // graph document or DIMACS text
  std::string artifact;
  std::string schedule;  // may be empty
};

struct HarnessReport {
  std::string suite;
  std::vector<TrialVerdict> trials;
  std::vector<Counterexample> counterexamples;

  bool consistent() const { return counterexamples.empty(); }
  std::size_t consistent_count() const;
  /// JSON bundle of every counterexample.
  std::string bundle() const;
};

struct CliqueSuiteOptions {
  int k = 3;
  std::size_t per_color = 2;
  /// Trial t uses edge_probs[t % size].
  std::vector<Probability> edge_probs{Probability{1, 2}};
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  Mode mode = Mode::Patched;
  FrontierOptions frontier;
};

/// Planted clique -> witness schedule must be feasible with weight equal to
/// the target.
HarnessReport verify_lemma1(const CliqueSuiteOptions& options);

/// Frontier-DP optimum meets the target iff a multicolored clique exists;
/// on threshold-meeting optima the clique is extracted, exactly one edge job
/// runs per edge-selection machine, and every DP layer stays within
/// (n+1)^m states.
HarnessReport verify_equiv_mcc(const CliqueSuiteOptions& options);

struct SatSuiteOptions {
  std::size_t max_variables = 3;  // alpha drawn uniformly from [1, max]
  std::size_t max_clauses = 3;    // beta drawn uniformly from [1, max]
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  DecisionOptions decision;
};

/// Satisfiable formulas only (trials counts satisfiable ones): the witness
/// schedule places all 4a+5b jobs feasibly, and extraction gives back a
/// satisfying assignment.
HarnessReport verify_lemma3(const SatSuiteOptions& options);

/// All-jobs decision agrees with brute-force SAT; extracted assignments
/// satisfy the formula.
HarnessReport verify_equiv_sat(const SatSuiteOptions& options);

struct SolverSuiteOptions {
  std::size_t max_jobs = 8;
  std::size_t max_machines = 3;
  Time max_deadline = 12;
  Time max_duration = 12;
  Weight max_weight = 100;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
};

/// Frontier DP (with and without dominance pruning) equals brute force; for
/// m = 1 the interval DP agrees as well; every schedule validates at its
/// reported weight.
HarnessReport verify_solvers(const SolverSuiteOptions& options);

}  // namespace jitsched
