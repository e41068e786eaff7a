#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "jitsched/core.hpp"
#include "jitsched/reductions.hpp"

namespace jitsched {

// Every writer emits canonical text: fixed key order, two-space indentation,
// decimal integers, trailing newline. Parsers throw ParseError with the line
// or JSON field that failed.

std::string write_instance(const Instance& instance);
std::string write_instance(const ReductionArtifact& artifact);

/// Plain instance, or an artifact when the document carries annotations.
using InstanceDocument = std::variant<Instance, ReductionArtifact>;

InstanceDocument parse_instance_document(std::string_view text);
/// Drops annotations if present.
Instance parse_instance(std::string_view text);
/// Throws ParseError when the document has no annotations.
ReductionArtifact parse_artifact(std::string_view text);

std::string write_graph(const KPartiteGraph& graph);
KPartiteGraph parse_graph(std::string_view text);

std::string write_schedule(const Schedule& schedule);
Schedule parse_schedule(std::string_view text);

/// One `p cnf` header line, then one clause per line.
std::string write_dimacs(const CnfFormula& formula);
/// Standard DIMACS CNF; every clause must have exactly three literals.
CnfFormula parse_dimacs(std::string_view text);

struct RenderOptions {
  std::optional<std::size_t> machine;  // render a single machine
  bool show_ineligible = false;        // gray, dashed, using the job's eligible duration
};

/// SVG 1.1 timeline: one lane stack per machine over an integer time axis.
/// Jobs placed on a machine by `schedule` are drawn bold, the rest thin and
/// gray; empty intervals are tick marks. Throws UsageError for a machine
/// filter outside [0, m).
std::string render_svg(const Instance& instance, const Schedule* schedule = nullptr,
                       const RenderOptions& options = {});

}  // namespace jitsched
