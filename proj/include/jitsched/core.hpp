#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jitsched/error.hpp"

namespace jitsched {

using Time = std::int64_t;
using Weight = std::int64_t;

/// Machine a job is placed on; std::nullopt means the job is rejected.
using Placement = std::optional<std::size_t>;

struct Job {
  std::string id;
  Time deadline = 1;
  Weight weight = 0;

  bool operator==(const Job&) const = default;
};

/// m x n table of processing times. A missing entry marks the job as
/// ineligible on that machine.
class ProcessingTable {
 public:
  ProcessingTable() = default;
  ProcessingTable(std::size_t machines, std::size_t jobs);

  std::size_t machine_count() const { return machines_; }
  std::size_t job_count() const { return jobs_; }

  std::optional<Time> at(std::size_t machine, std::size_t job) const;
  bool eligible(std::size_t machine, std::size_t job) const { return at(machine, job).has_value(); }
  void set(std::size_t machine, std::size_t job, std::optional<Time> duration);

  /// For each job, every eligible entry carries the same duration.
  bool is_eligible_uniform() const;
  /// No entry is ineligible.
  bool is_unrelated() const;

  bool operator==(const ProcessingTable&) const = default;

 private:
  std::size_t index(std::size_t machine, std::size_t job) const;

  std::size_t machines_ = 0;
  std::size_t jobs_ = 0;
  std::vector<std::optional<Time>> entries_;
};

enum class Variant { Eligible, Unrelated, UnrelatedUnweighted };

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view s);

/// Immutable problem instance. The constructor enforces every invariant of
/// the job list, the table dimensions and the variant hint.
class Instance {
 public:
  Instance(std::vector<Job> jobs, ProcessingTable table, Variant hint);

  const std::vector<Job>& jobs() const { return jobs_; }
  const Job& job(std::size_t j) const { return jobs_.at(j); }
  const ProcessingTable& table() const { return table_; }
  Variant variant() const { return variant_; }
  std::size_t job_count() const { return jobs_.size(); }
  std::size_t machine_count() const { return table_.machine_count(); }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Position of job `id`; throws UsageError when absent.
  std::size_t position(std::string_view id) const;

  bool operator==(const Instance& other) const {
    return jobs_ == other.jobs_ && table_ == other.table_ && variant_ == other.variant_;
  }

 private:
  std::vector<Job> jobs_;
  ProcessingTable table_;
  Variant variant_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Half-open interval (start, end]; start == end is empty.
struct Interval {
  Time start = 0;
  Time end = 0;

  bool empty() const { return start == end; }
  bool operator==(const Interval&) const = default;
};

/// Nonempty intersection of (a.start, a.end] and (b.start, b.end].
constexpr bool intervals_conflict(const Interval& a, const Interval& b) {
  const Time lo = a.start > b.start ? a.start : b.start;
  const Time hi = a.end < b.end ? a.end : b.end;
  return lo < hi;
}

/// (d_j - p_ij, d_j], or nullopt when j is ineligible on the machine.
std::optional<Interval> interval_of(const Instance& instance, std::size_t job, std::size_t machine);
std::optional<Interval> interval_of(const Instance& instance, std::string_view job_id,
                                    std::size_t machine);

/// Total map from job id to placement, kept in insertion order.
class Schedule {
 public:
  using Entry = std::pair<std::string, Placement>;

  Schedule() = default;

  static Schedule all_rejected(const Instance& instance);
  /// Builds a schedule in instance job order from per-position placements.
  static Schedule from_placements(const Instance& instance, std::span<const Placement> placements);

  /// Appends a new entry; a repeated id is a UsageError.
  void add(std::string id, Placement placement);
  /// Replaces the placement of an existing entry.
  void set(std::string_view id, Placement placement);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(std::string_view id) const;
  Placement at(std::string_view id) const;
  std::size_t scheduled_count() const;

  bool operator==(const Schedule& other) const { return entries_ == other.entries_; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Per-position placements of `schedule`; throws UsageError unless its
/// domain equals the instance's job ids.
std::vector<Placement> placements_of(const Instance& instance, const Schedule& schedule);

struct Violation {
  enum class Kind { Conflict, Ineligible };

  Kind kind = Kind::Conflict;
  std::size_t machine = 0;
  std::string job;
  std::string other_job;  // empty unless kind == Conflict

  bool operator==(const Violation&) const = default;
};

std::string describe(const Violation& v);

struct ValidationReport {
  bool feasible = true;
  Weight total_weight = 0;
  std::vector<Violation> violations;
};

/// Exhaustive feasibility check plus checked weight sum. Violations are
/// ordered by machine, then by job position.
ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule);

/// Checked sum of weights of placed jobs.
Weight scheduled_weight(const Instance& instance, std::span<const Placement> placements);

}  // namespace jitsched
