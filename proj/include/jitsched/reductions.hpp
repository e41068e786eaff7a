#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "jitsched/core.hpp"

namespace jitsched {

// ---------------------------------------------------------------------------
// Source problems
// ---------------------------------------------------------------------------

/// k-partite graph; colors are numbered 1..k and parts()[c - 1] holds color c.
class KPartiteGraph {
 public:
  using Edge = std::pair<std::string, std::string>;

  KPartiteGraph(std::vector<std::vector<std::string>> parts, std::vector<Edge> edges);

  int k() const { return static_cast<int>(parts_.size()); }
  const std::vector<std::vector<std::string>>& parts() const { return parts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return color_.size(); }

  /// Color (1-based) of `vertex`; throws UsageError for unknown vertices.
  int color_of(const std::string& vertex) const;
  bool contains(const std::string& vertex) const { return color_.contains(vertex); }
  bool has_edge(const std::string& a, const std::string& b) const;

  bool operator==(const KPartiteGraph& other) const {
    return parts_ == other.parts_ && edges_ == other.edges_;
  }

 private:
  std::vector<std::vector<std::string>> parts_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> color_;
  std::unordered_set<std::string> edge_keys_;
};

/// Ordinal positions 1..n_G, colors contiguous and ascending, input order
/// inside a color.
struct VertexOrdering {
  std::vector<std::string> vertices;  // vertices[p - 1] has position p
  std::unordered_map<std::string, Time> position;
};

VertexOrdering vertex_ordering(const KPartiteGraph& graph);

struct WeightConstants {
  Weight c1 = 0;
  Weight c2 = 0;
  Weight c3 = 0;

  bool operator==(const WeightConstants&) const = default;
};

/// c1 = n+1, c2 = (k-1) n c1 + n + 1, c3 = (k n + k^2 n) n c2 + 1, checked.
WeightConstants weight_constants(std::int64_t k, std::int64_t vertex_count);
WeightConstants weight_constants(const KPartiteGraph& graph);

struct Literal {
  std::size_t variable = 0;  // 0-based
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

using Clause = std::array<Literal, 3>;

struct CnfFormula {
  std::size_t variable_count = 0;
  std::vector<Clause> clauses;

  /// Throws ValidationError when a literal names a variable out of range.
  void validate() const;
  /// Occurrence count per variable over all literal slots.
  std::vector<std::size_t> occurrences() const;
  /// Variables whose occurrence count differs from four.
  std::vector<std::size_t> strict34_offenders() const;
  bool is_strict34() const { return strict34_offenders().empty(); }

  bool operator==(const CnfFormula&) const = default;
};

/// Truth value per variable.
using TruthAssignment = std::vector<bool>;

bool satisfies(const CnfFormula& formula, const TruthAssignment& assignment);

struct CliqueWitness {
  std::vector<std::string> vertices;  // vertices[c - 1] has color c

  bool operator==(const CliqueWitness&) const = default;
};

/// First multicolored clique in part-wise lexicographic order.
std::optional<CliqueWitness> brute_force_clique(const KPartiteGraph& graph,
                                                std::uint64_t budget = 100'000'000);

/// First satisfying assignment in lexicographic order, variable 0 most
/// significant and false < true.
std::optional<TruthAssignment> brute_force_sat(const CnfFormula& formula, std::size_t max_variables = 24);

// ---------------------------------------------------------------------------
// Artifacts
// ---------------------------------------------------------------------------

/// Vertex job j_v^(job_color); on-color when job_color == vertex_color.
struct VertexJobRole {
  std::string vertex;
  int vertex_color = 0;
  int job_color = 0;
  Time position = 0;
  bool operator==(const VertexJobRole&) const = default;
};

/// Edge job j_e for e = {low, high}, low having the smaller color.
struct EdgeJobRole {
  std::string low;
  std::string high;
  int low_color = 0;
  int high_color = 0;
  Time low_position = 0;
  Time high_position = 0;
  bool operator==(const EdgeJobRole&) const = default;
};

/// Color-combination job j_v^(color_low, color_high).
struct ComboJobRole {
  std::string vertex;
  int color_low = 0;
  int color_high = 0;
  Time position = 0;
  bool operator==(const ComboJobRole&) const = default;
};

struct VariableJobRole {
  std::size_t variable = 0;
  bool truth = false;  // x^T when true, x^F otherwise
  Time position = 0;
  bool operator==(const VariableJobRole&) const = default;
};

/// Clause job c_literal (literal in 1..3) with the literal it stands for.
struct ClauseJobRole {
  std::size_t clause = 0;
  int literal = 1;
  std::size_t variable = 0;
  bool negated = false;
  Time position = 0;
  bool operator==(const ClauseJobRole&) const = default;
};

struct DummyJobRole {
  std::size_t index = 1;  // 1-based
  Time position = 0;
  bool operator==(const DummyJobRole&) const = default;
};

using JobRole =
    std::variant<VertexJobRole, EdgeJobRole, ComboJobRole, VariableJobRole, ClauseJobRole, DummyJobRole>;

struct EdgeSelectionMachine {
  int color_low = 0;
  int color_high = 0;
  bool operator==(const EdgeSelectionMachine&) const = default;
};
struct CliqueValidationMachine {
  bool operator==(const CliqueValidationMachine&) const = default;
};
struct VariableSelectionMachine {
  std::size_t variable = 0;
  bool operator==(const VariableSelectionMachine&) const = default;
};
struct ClauseSelectionMachine {
  std::size_t clause = 0;
  int copy = 1;  // 1 or 2
  bool operator==(const ClauseSelectionMachine&) const = default;
};
struct SatValidationMachine {
  std::size_t variable = 0;
  bool operator==(const SatValidationMachine&) const = default;
};

using MachineRole = std::variant<EdgeSelectionMachine, CliqueValidationMachine, VariableSelectionMachine,
                                 ClauseSelectionMachine, SatValidationMachine>;

/// Edge-job duration as printed, or one less so that the clique witness
/// chain on an edge-selection machine is conflict-free.
enum class Mode { Verbatim, Patched };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view s);

struct ReductionArtifact {
  Instance instance;
  std::vector<JobRole> job_roles;  // aligned with instance.jobs()
  std::vector<MachineRole> machine_roles;
  Weight target = 0;
  std::optional<Mode> mode;  // set for clique reductions only

  /// Throws ValidationError when roles and instance dimensions disagree.
  void validate() const;

  bool operator==(const ReductionArtifact&) const = default;
};

// ---------------------------------------------------------------------------
// Multicolored clique -> interval scheduling on eligible machines
// ---------------------------------------------------------------------------

/// W* = C(k,2) c3 + C(k,2) n c2 + (k-1) n c1 + k.
Weight mcc_target(std::int64_t k, std::int64_t vertex_count);
Weight mcc_target(const KPartiteGraph& graph);

/// Builds the eligible-machines instance: C(k,2) edge-selection machines in
/// lexicographic color-pair order followed by one validation machine.
ReductionArtifact mcc_to_isem(const KPartiteGraph& graph, Mode mode = Mode::Patched);

/// Witness schedule of a multicolored clique. Throws WitnessError when the
/// vertices are not one per color or some pair is not an edge.
Schedule schedule_from_clique(const ReductionArtifact& artifact, const CliqueWitness& clique);

struct CliqueExtraction {
  std::optional<CliqueWitness> clique;
  std::string diagnostics;  // why extraction failed
};

/// Reads the clique off the scheduled on-color vertex jobs. Throws UsageError
/// when the schedule is infeasible or below the artifact target.
CliqueExtraction clique_from_schedule(const ReductionArtifact& artifact, const Schedule& schedule);

/// Number of scheduled edge jobs on each edge-selection machine, in machine
/// order.
std::vector<std::size_t> edge_jobs_per_machine(const ReductionArtifact& artifact, const Schedule& schedule);

// ---------------------------------------------------------------------------
// 3-CNF satisfiability -> unweighted interval scheduling on unrelated machines
// ---------------------------------------------------------------------------

struct SatJob {
  std::string id;
  JobRole role;
};

/// Jobs ordered dummies, negated clause jobs, x^F, non-negated clause jobs,
/// x^T; the position in this order is each job's deadline.
std::vector<SatJob> sat_job_order(const CnfFormula& formula);

/// Builds the unweighted unrelated-machines instance: variable-selection
/// machines, then two clause-selection machines per clause, then validation
/// machines. With `strict`, the formula must have every variable occurring
/// exactly four times.
ReductionArtifact sat_to_uisum(const CnfFormula& formula, bool strict = false);

/// All-jobs witness schedule of a satisfying assignment. Throws WitnessError
/// naming the first unsatisfied clause.
Schedule schedule_from_assignment(const ReductionArtifact& artifact, const TruthAssignment& assignment);

/// x is true iff x^T runs on x's variable-selection machine. Throws
/// UsageError unless the schedule is feasible and rejects nothing.
TruthAssignment assignment_from_schedule(const ReductionArtifact& artifact, const Schedule& schedule);

}  // namespace jitsched
