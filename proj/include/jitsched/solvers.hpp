#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "jitsched/core.hpp"

namespace jitsched {

struct SolverStats {
  std::uint64_t states_explored = 0;
  std::uint64_t nodes_expanded = 0;
  /// Frontier DP only: distinct states created for each processed job.
  std::vector<std::uint64_t> states_per_layer;
};

struct OptResult {
  Weight optimum = 0;
  Schedule schedule;
  SolverStats stats;
};

/// Job positions sorted by deadline, ties in input order.
std::vector<std::size_t> deadline_order(const Instance& instance);

struct FrontierOptions {
  /// Drop a state when another state of the same layer has a componentwise
  /// smaller-or-equal frontier and at least its weight.
  bool dominance_pruning = false;
  /// Upper bound on the number of states in one layer.
  std::uint64_t max_layer_states = 20'000'000;
};

/// Exact maximum-weight schedule by dynamic programming over per-machine
/// frontiers (latest deadline assigned so far), jobs in deadline order.
/// Runs in O(m n^(m+1)) for fixed m.
OptResult solve_frontier_dp(const Instance& instance, const FrontierOptions& options = {});

struct BruteForceOptions {
  std::uint64_t max_assignments = 200'000'000;
};

/// Enumerates every job -> {rejected, machine 0..m-1} assignment in
/// lexicographic order (job 0 most significant, rejected first) and returns
/// the first one of maximum weight. Throws ResourceError when (m+1)^n exceeds
/// the budget.
OptResult solve_brute_force(const Instance& instance, const BruteForceOptions& options = {});

struct DecisionOptions {
  std::uint64_t node_budget = 50'000'000;
};

struct DecisionResult {
  std::optional<Schedule> schedule;  // nullopt: no schedule places every job
  SolverStats stats;
};

/// Searches for a feasible schedule that rejects no job. Depth-first over
/// jobs in deadline order, lowest machine first, with failed frontiers
/// memoized per depth. Throws ResourceError when the node budget runs out.
DecisionResult solve_all_jobs_decision(const Instance& instance, const DecisionOptions& options = {});

/// Weighted interval scheduling on a single machine. Throws UsageError
/// unless m == 1.
OptResult solve_single_machine(const Instance& instance);

}  // namespace jitsched
