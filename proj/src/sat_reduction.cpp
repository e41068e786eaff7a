#include <algorithm>

#include "jitsched/reductions.hpp"

namespace jitsched {

namespace {

std::string variable_job_id(std::size_t x, bool truth) { return "x" + std::to_string(x + 1) + (truth ? "^T" : "^F"); }

std::string clause_job_id(std::size_t c, int literal) {
  return "c" + std::to_string(c + 1) + "_" + std::to_string(literal);
}

std::string dummy_job_id(std::size_t t) { return "d" + std::to_string(t); }

Time position_of(const JobRole& role) {
  return std::visit(
      [](const auto& r) -> Time {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, EdgeJobRole>) return r.low_position;
        else return r.position;
      },
      role);
}

/// Machine and job lookups over the roles of a satisfiability artifact.
struct SatIndex {
  std::vector<std::size_t> true_job, false_job;  // per variable
  std::vector<std::array<std::size_t, 3>> clause_job;
  std::vector<ClauseJobRole> clause_role;  // flattened 3 per clause
  std::vector<std::size_t> dummies;  // by dummy index - 1
  std::vector<std::size_t> selection, validation;  // per variable
  std::vector<std::array<std::size_t, 2>> clause_machines;

  explicit SatIndex(const ReductionArtifact& artifact) {
    if (artifact.mode) throw UsageError("artifact was not produced by the satisfiability reduction");
    std::size_t vars = 0, clauses = 0;
    for (const auto& role : artifact.machine_roles) {
      if (const auto* r = std::get_if<VariableSelectionMachine>(&role)) vars = std::max(vars, r->variable + 1);
      else if (const auto* r2 = std::get_if<ClauseSelectionMachine>(&role)) clauses = std::max(clauses, r2->clause + 1);
      else if (!std::holds_alternative<SatValidationMachine>(role)) {
        throw UsageError("artifact contains machines of the clique reduction");
      }
    }
    true_job.assign(vars, 0);
    false_job.assign(vars, 0);
    selection.assign(vars, 0);
    validation.assign(vars, 0);
    clause_job.assign(clauses, {});
    clause_role.assign(3 * clauses, {});
    clause_machines.assign(clauses, {});
    for (std::size_t i = 0; i < artifact.machine_roles.size(); ++i) {
      const auto& role = artifact.machine_roles[i];
      if (const auto* r = std::get_if<VariableSelectionMachine>(&role)) selection[r->variable] = i;
      else if (const auto* r2 = std::get_if<ClauseSelectionMachine>(&role))
        clause_machines[r2->clause][static_cast<std::size_t>(r2->copy - 1)] = i;
      else if (const auto* r3 = std::get_if<SatValidationMachine>(&role)) validation[r3->variable] = i;
    }
    for (std::size_t j = 0; j < artifact.job_roles.size(); ++j) {
      const auto& role = artifact.job_roles[j];
      if (const auto* r = std::get_if<VariableJobRole>(&role)) {
        (r->truth ? true_job : false_job).at(r->variable) = j;
      } else if (const auto* c = std::get_if<ClauseJobRole>(&role)) {
        clause_job.at(c->clause)[static_cast<std::size_t>(c->literal - 1)] = j;
        clause_role.at(3 * c->clause + static_cast<std::size_t>(c->literal - 1)) = *c;
      } else if (const auto* d = std::get_if<DummyJobRole>(&role)) {
        if (dummies.size() < d->index) dummies.resize(d->index, 0);
        dummies[d->index - 1] = j;
      } else {
        throw UsageError("artifact contains roles of the clique reduction");
      }
    }
  }
};

}  // namespace

std::vector<SatJob> sat_job_order(const CnfFormula& formula) {
  formula.validate();
  const std::size_t alpha = formula.variable_count;
  const std::size_t beta = formula.clauses.size();
  std::vector<SatJob> out;
  out.reserve(4 * alpha + 5 * beta);
  auto next = [&]() { return static_cast<Time>(out.size() + 1); };

  for (std::size_t t = 1; t <= 2 * alpha + 2 * beta; ++t) {
    out.push_back({dummy_job_id(t), DummyJobRole{t, next()}});
  }
  auto clause_jobs = [&](bool negated) {
    for (std::size_t c = 0; c < beta; ++c) {
      for (int l = 1; l <= 3; ++l) {
        const Literal& lit = formula.clauses[c][static_cast<std::size_t>(l - 1)];
        if (lit.negated != negated) continue;
        out.push_back({clause_job_id(c, l), ClauseJobRole{c, l, lit.variable, lit.negated, next()}});
      }
    }
  };
  auto variable_jobs = [&](bool truth) {
    for (std::size_t x = 0; x < alpha; ++x) {
      out.push_back({variable_job_id(x, truth), VariableJobRole{x, truth, next()}});
    }
  };
  clause_jobs(true);
  variable_jobs(false);
  clause_jobs(false);
  variable_jobs(true);
  return out;
}

ReductionArtifact sat_to_uisum(const CnfFormula& formula, bool strict) {
  formula.validate();
  if (strict) {
    const auto bad = formula.strict34_offenders();
    if (!bad.empty()) {
      std::string names;
      const auto count = formula.occurrences();
      for (std::size_t x : bad) {
        names += " x" + std::to_string(x + 1) + "(" + std::to_string(count[x]) + ")";
      }
      throw ValidationError("formula is not exact (3,4): variables not occurring exactly four times:" + names);
    }
  }
  const std::size_t alpha = formula.variable_count;
  const std::size_t beta = formula.clauses.size();
  if (alpha + beta == 0) throw ValidationError("formula has neither variables nor clauses");

  const auto order = sat_job_order(formula);
  const std::size_t n = order.size();
  const std::size_t m = 2 * alpha + 2 * beta;
  const Time offset = static_cast<Time>(2 * alpha + 2 * beta);

  std::vector<Job> jobs;
  std::vector<JobRole> roles;
  for (const auto& sj : order) {
    jobs.push_back(Job{sj.id, position_of(sj.role), 1});
    roles.push_back(sj.role);
  }

  // Blocked entries run over (0, d] and therefore hit every dummy.
  ProcessingTable table(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) table.set(i, j, jobs[j].deadline);
  }

  std::vector<MachineRole> machine_roles;
  std::vector<std::size_t> true_job(alpha), false_job(alpha);
  for (std::size_t j = 0; j < n; ++j) {
    if (const auto* r = std::get_if<VariableJobRole>(&roles[j])) (r->truth ? true_job : false_job)[r->variable] = j;
  }

  for (std::size_t x = 0; x < alpha; ++x) {
    const std::size_t i = machine_roles.size();
    machine_roles.emplace_back(VariableSelectionMachine{x});
    table.set(i, true_job[x], jobs[true_job[x]].deadline - offset);
    table.set(i, false_job[x], jobs[false_job[x]].deadline - offset);
  }
  for (std::size_t c = 0; c < beta; ++c) {
    for (int copy = 1; copy <= 2; ++copy) {
      const std::size_t i = machine_roles.size();
      machine_roles.emplace_back(ClauseSelectionMachine{c, copy});
      for (std::size_t j = 0; j < n; ++j) {
        if (const auto* r = std::get_if<ClauseJobRole>(&roles[j]); r && r->clause == c) {
          table.set(i, j, jobs[j].deadline - offset);
        }
      }
    }
  }
  for (std::size_t x = 0; x < alpha; ++x) {
    const std::size_t i = machine_roles.size();
    machine_roles.emplace_back(SatValidationMachine{x});
    table.set(i, true_job[x], jobs[true_job[x]].deadline - jobs[false_job[x]].deadline + 1);
    table.set(i, false_job[x], jobs[false_job[x]].deadline - offset);
    for (std::size_t j = 0; j < n; ++j) {
      if (const auto* r = std::get_if<ClauseJobRole>(&roles[j]); r && r->variable == x) table.set(i, j, 1);
    }
  }

  const auto target = static_cast<Weight>(n);
  return ReductionArtifact{Instance(std::move(jobs), std::move(table), Variant::UnrelatedUnweighted),
                           std::move(roles), std::move(machine_roles), target, std::nullopt};
}

Schedule schedule_from_assignment(const ReductionArtifact& artifact, const TruthAssignment& assignment) {
  const SatIndex index(artifact);
  const std::size_t alpha = index.true_job.size();
  if (assignment.size() != alpha) {
    throw WitnessError("assignment covers " + std::to_string(assignment.size()) + " variables, formula has " +
                       std::to_string(alpha));
  }
  std::vector<Placement> placed(artifact.instance.job_count());
  for (std::size_t x = 0; x < alpha; ++x) {
    const bool value = assignment[x];
    placed[value ? index.true_job[x] : index.false_job[x]] = index.selection[x];
    placed[value ? index.false_job[x] : index.true_job[x]] = index.validation[x];
  }
  for (std::size_t c = 0; c < index.clause_job.size(); ++c) {
    int satisfied = 0;
    for (int l = 1; l <= 3 && !satisfied; ++l) {
      const auto& r = index.clause_role[3 * c + static_cast<std::size_t>(l - 1)];
      if (assignment[r.variable] != r.negated) satisfied = l;
    }
    if (!satisfied) throw WitnessError("assignment leaves clause " + std::to_string(c + 1) + " unsatisfied");
    std::size_t copy = 0;
    for (int l = 1; l <= 3; ++l) {
      const std::size_t j = index.clause_job[c][static_cast<std::size_t>(l - 1)];
      if (l == satisfied) {
        placed[j] = index.validation[index.clause_role[3 * c + static_cast<std::size_t>(l - 1)].variable];
      } else {
        placed[j] = index.clause_machines[c][copy++];
      }
    }
  }
  for (std::size_t t = 0; t < index.dummies.size(); ++t) placed[index.dummies[t]] = t;
  return Schedule::from_placements(artifact.instance, placed);
}

TruthAssignment assignment_from_schedule(const ReductionArtifact& artifact, const Schedule& schedule) {
  const SatIndex index(artifact);
  const auto placed = placements_of(artifact.instance, schedule);
  for (std::size_t j = 0; j < placed.size(); ++j) {
    if (!placed[j]) {
      throw UsageError("assignment extraction needs every job scheduled; '" + artifact.instance.job(j).id +
                       "' is rejected");
    }
  }
  if (!validate_schedule(artifact.instance, schedule).feasible) {
    throw UsageError("assignment extraction needs a feasible schedule");
  }
  TruthAssignment out(index.true_job.size(), false);
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = placed[index.true_job[x]] == index.selection[x];
  return out;
}

void ReductionArtifact::validate() const {
  if (job_roles.size() != instance.job_count()) {
    throw ValidationError("artifact has " + std::to_string(job_roles.size()) + " job roles for " +
                          std::to_string(instance.job_count()) + " jobs");
  }
  if (machine_roles.size() != instance.machine_count()) {
    throw ValidationError("artifact has " + std::to_string(machine_roles.size()) + " machine roles for " +
                          std::to_string(instance.machine_count()) + " machines");
  }
  for (const auto& role : job_roles) {
    const bool clique_role = std::holds_alternative<VertexJobRole>(role) || std::holds_alternative<EdgeJobRole>(role) ||
                             std::holds_alternative<ComboJobRole>(role);
    if (clique_role != mode.has_value()) {
      throw ValidationError("job roles do not match the artifact's reduction");
    }
  }
}

}  // namespace jitsched
