#include "jitsched/core.hpp"

#include <algorithm>

namespace jitsched {

ProcessingTable::ProcessingTable(std::size_t machines, std::size_t jobs)
    : machines_(machines), jobs_(jobs), entries_(machines * jobs) {}

std::size_t ProcessingTable::index(std::size_t machine, std::size_t job) const {
  if (machine >= machines_) {
    throw UsageError("machine index " + std::to_string(machine) + " out of range [0, " +
                     std::to_string(machines_) + ")");
  }
  if (job >= jobs_) {
    throw UsageError("job index " + std::to_string(job) + " out of range");
  }
  return machine * jobs_ + job;
}

std::optional<Time> ProcessingTable::at(std::size_t machine, std::size_t job) const {
  return entries_[index(machine, job)];
}

void ProcessingTable::set(std::size_t machine, std::size_t job, std::optional<Time> duration) {
  if (duration && *duration < 0) {
    throw ValidationError("processing time must be >= 0");
  }
  entries_[index(machine, job)] = duration;
}

bool ProcessingTable::is_eligible_uniform() const {
  for (std::size_t j = 0; j < jobs_; ++j) {
    std::optional<Time> seen;
    for (std::size_t i = 0; i < machines_; ++i) {
      const auto& p = entries_[i * jobs_ + j];
      if (!p) continue;
      if (seen && *seen != *p) return false;
      seen = p;
    }
  }
  return true;
}

bool ProcessingTable::is_unrelated() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& p) { return p.has_value(); });
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Eligible:
      return "ELIGIBLE";
    case Variant::Unrelated:
      return "UNRELATED";
    case Variant::UnrelatedUnweighted:
      return "UNRELATED_UNWEIGHTED";
  }
  return "?";
}

Variant variant_from_string(std::string_view s) {
  if (s == "ELIGIBLE") return Variant::Eligible;
  if (s == "UNRELATED") return Variant::Unrelated;
  if (s == "UNRELATED_UNWEIGHTED") return Variant::UnrelatedUnweighted;
  throw ValidationError("unknown variant '" + std::string(s) + "'");
}

Instance::Instance(std::vector<Job> jobs, ProcessingTable table, Variant hint)
    : jobs_(std::move(jobs)), table_(std::move(table)), variant_(hint) {
  if (table_.machine_count() < 1) {
    throw ValidationError("instance needs at least one machine");
  }
  if (table_.job_count() != jobs_.size()) {
    throw ValidationError("processing table has " + std::to_string(table_.job_count()) +
                          " columns for " + std::to_string(jobs_.size()) + " jobs");
  }
  by_id_.reserve(jobs_.size());
  for (std::size_t j = 0; j < jobs_.size(); ++j) {
    const Job& job = jobs_[j];
    if (job.deadline < 1) {
      throw ValidationError("job '" + job.id + "': deadline must be >= 1");
    }
    if (job.weight < 0) {
      throw ValidationError("job '" + job.id + "': weight must be >= 0");
    }
    if (!by_id_.emplace(job.id, j).second) {
      throw ValidationError("duplicate job id '" + job.id + "'");
    }
    if (variant_ == Variant::UnrelatedUnweighted && job.weight != 1) {
      throw ValidationError("job '" + job.id + "': unweighted variant requires weight 1");
    }
  }
  if (variant_ == Variant::Eligible && !table_.is_eligible_uniform()) {
    throw ValidationError("ELIGIBLE variant requires one duration per job on all eligible machines");
  }
  if (variant_ != Variant::Eligible && !table_.is_unrelated()) {
    throw ValidationError("unrelated variants require every job eligible on every machine");
  }
}

std::optional<std::size_t> Instance::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t Instance::position(std::string_view id) const {
  auto j = find(id);
  if (!j) throw UsageError("unknown job id '" + std::string(id) + "'");
  return *j;
}

std::optional<Interval> interval_of(const Instance& instance, std::size_t job, std::size_t machine) {
  if (job >= instance.job_count()) {
    throw UsageError("job index " + std::to_string(job) + " out of range");
  }
  if (machine >= instance.machine_count()) {
    throw UsageError("machine index " + std::to_string(machine) + " out of range [0, " +
                     std::to_string(instance.machine_count()) + ")");
  }
  const auto p = instance.table().at(machine, job);
  if (!p) return std::nullopt;
  const Time d = instance.job(job).deadline;
  return Interval{checked_sub(d, *p), d};
}

std::optional<Interval> interval_of(const Instance& instance, std::string_view job_id,
                                    std::size_t machine) {
  return interval_of(instance, instance.position(job_id), machine);
}

Schedule Schedule::all_rejected(const Instance& instance) {
  Schedule s;
  for (const Job& job : instance.jobs()) s.add(job.id, std::nullopt);
  return s;
}

Schedule Schedule::from_placements(const Instance& instance, std::span<const Placement> placements) {
  if (placements.size() != instance.job_count()) {
    throw UsageError("placement vector does not match job count");
  }
  Schedule s;
  for (std::size_t j = 0; j < placements.size(); ++j) s.add(instance.job(j).id, placements[j]);
  return s;
}

void Schedule::add(std::string id, Placement placement) {
  if (by_id_.contains(id)) {
    throw UsageError("job '" + id + "' assigned twice");
  }
  by_id_.emplace(id, entries_.size());
  entries_.emplace_back(std::move(id), placement);
}

void Schedule::set(std::string_view id, Placement placement) {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) throw UsageError("unknown job id '" + std::string(id) + "'");
  entries_[it->second].second = placement;
}

bool Schedule::contains(std::string_view id) const { return by_id_.contains(std::string(id)); }

Placement Schedule::at(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) throw UsageError("unknown job id '" + std::string(id) + "'");
  return entries_[it->second].second;
}

std::size_t Schedule::scheduled_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second.has_value(); }));
}

std::vector<Placement> placements_of(const Instance& instance, const Schedule& schedule) {
  if (schedule.size() != instance.job_count()) {
    throw UsageError("schedule covers " + std::to_string(schedule.size()) + " jobs, instance has " +
                     std::to_string(instance.job_count()));
  }
  std::vector<Placement> out(instance.job_count());
  for (const auto& [id, placement] : schedule.entries()) {
    const auto j = instance.find(id);
    if (!j) throw UsageError("schedule references unknown job id '" + id + "'");
    if (placement && *placement >= instance.machine_count()) {
      throw UsageError("job '" + id + "' placed on machine " + std::to_string(*placement) +
                       " but instance has " + std::to_string(instance.machine_count()));
    }
    out[*j] = placement;
  }
  return out;
}

std::string describe(const Violation& v) {
  if (v.kind == Violation::Kind::Ineligible) {
    return "INELIGIBLE job=" + v.job + " machine=" + std::to_string(v.machine);
  }
  return "CONFLICT jobs=" + v.job + "," + v.other_job + " machine=" + std::to_string(v.machine);
}

Weight scheduled_weight(const Instance& instance, std::span<const Placement> placements) {
  Weight total = 0;
  for (std::size_t j = 0; j < placements.size(); ++j) {
    if (placements[j]) total = checked_add(total, instance.job(j).weight);
  }
  return total;
}

ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule) {
  const auto placed = placements_of(instance, schedule);
  ValidationReport report;
  report.total_weight = scheduled_weight(instance, placed);

  for (std::size_t i = 0; i < instance.machine_count(); ++i) {
    std::vector<std::size_t> on_machine;
    for (std::size_t j = 0; j < placed.size(); ++j) {
      if (placed[j] == i) on_machine.push_back(j);
    }
    for (std::size_t a = 0; a < on_machine.size(); ++a) {
      const std::size_t ja = on_machine[a];
      const auto ia = interval_of(instance, ja, i);
      if (!ia) {
        report.violations.push_back({Violation::Kind::Ineligible, i, instance.job(ja).id, {}});
        continue;
      }
      for (std::size_t b = a + 1; b < on_machine.size(); ++b) {
        const std::size_t jb = on_machine[b];
        const auto ib = interval_of(instance, jb, i);
        if (ib && intervals_conflict(*ia, *ib)) {
          report.violations.push_back(
              {Violation::Kind::Conflict, i, instance.job(ja).id, instance.job(jb).id});
        }
      }
    }
  }
  report.feasible = report.violations.empty();
  return report;
}

}  // namespace jitsched
