#include "jitsched/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace jitsched {

using json = nlohmann::ordered_json;

namespace {

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) {
    if (v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      fail(path, "integer outside the signed 64-bit range");
    }
    return static_cast<std::int64_t>(v.get<std::uint64_t>());
  }
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) fail(path, "expected an integer (value outside the signed 64-bit range or fractional)");
  fail(path, "expected an integer");
}

std::size_t as_index(const json& v, const std::string& path) {
  const auto i = as_int(v, path);
  if (i < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

// Roles -----------------------------------------------------------------

json role_to_json(const JobRole& role) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        json o;
        if constexpr (std::is_same_v<T, VertexJobRole>) {
          o["kind"] = "VERTEX";
          o["vertex"] = r.vertex;
          o["vertex_color"] = r.vertex_color;
          o["job_color"] = r.job_color;
        } else if constexpr (std::is_same_v<T, EdgeJobRole>) {
          o["kind"] = "EDGE";
          o["low"] = r.low;
          o["high"] = r.high;
          o["low_color"] = r.low_color;
          o["high_color"] = r.high_color;
          o["low_position"] = r.low_position;
          o["high_position"] = r.high_position;
        } else if constexpr (std::is_same_v<T, ComboJobRole>) {
          o["kind"] = "COLORCOMBO";
          o["vertex"] = r.vertex;
          o["colors"] = json::array({r.color_low, r.color_high});
        } else if constexpr (std::is_same_v<T, VariableJobRole>) {
          o["kind"] = "VARIABLE";
          o["variable"] = r.variable + 1;
          o["value"] = r.truth ? "T" : "F";
        } else if constexpr (std::is_same_v<T, ClauseJobRole>) {
          o["kind"] = "CLAUSE";
          o["clause"] = r.clause + 1;
          o["literal"] = r.literal;
          o["variable"] = r.variable + 1;
          o["negated"] = r.negated;
        } else {
          o["kind"] = "DUMMY";
          o["index"] = r.index;
        }
        if constexpr (!std::is_same_v<T, EdgeJobRole>) o["position"] = r.position;
        return o;
      },
      role);
}

int as_color(const json& v, const std::string& path) {
  const auto c = as_int(v, path);
  if (c < 1 || c > std::numeric_limits<int>::max()) fail(path, "color must be >= 1");
  return static_cast<int>(c);
}

std::size_t as_one_based(const json& v, const std::string& path) {
  const auto i = as_index(v, path);
  if (i < 1) fail(path, "index must be >= 1");
  return i - 1;
}

JobRole role_from_json(const json& o, const std::string& path) {
  const auto kind = as_string(field(o, "kind", path), path + ".kind");
  auto get = [&](const char* key) -> const json& { return field(o, key, path); };
  auto sub = [&](const char* key) { return path + "." + key; };
  if (kind == "VERTEX") {
    return VertexJobRole{as_string(get("vertex"), sub("vertex")), as_color(get("vertex_color"), sub("vertex_color")),
                         as_color(get("job_color"), sub("job_color")), as_int(get("position"), sub("position"))};
  }
  if (kind == "EDGE") {
    return EdgeJobRole{as_string(get("low"), sub("low")),
                       as_string(get("high"), sub("high")),
                       as_color(get("low_color"), sub("low_color")),
                       as_color(get("high_color"), sub("high_color")),
                       as_int(get("low_position"), sub("low_position")),
                       as_int(get("high_position"), sub("high_position"))};
  }
  if (kind == "COLORCOMBO") {
    const auto& colors = as_array(get("colors"), sub("colors"));
    if (colors.size() != 2) fail(sub("colors"), "expected two colors");
    return ComboJobRole{as_string(get("vertex"), sub("vertex")), as_color(colors[0], sub("colors[0]")),
                        as_color(colors[1], sub("colors[1]")), as_int(get("position"), sub("position"))};
  }
  if (kind == "VARIABLE") {
    const auto value = as_string(get("value"), sub("value"));
    if (value != "T" && value != "F") fail(sub("value"), "expected \"T\" or \"F\"");
    return VariableJobRole{as_one_based(get("variable"), sub("variable")), value == "T",
                           as_int(get("position"), sub("position"))};
  }
  if (kind == "CLAUSE") {
    const auto literal = as_int(get("literal"), sub("literal"));
    if (literal < 1 || literal > 3) fail(sub("literal"), "literal must be 1, 2 or 3");
    return ClauseJobRole{as_one_based(get("clause"), sub("clause")), static_cast<int>(literal),
                         as_one_based(get("variable"), sub("variable")), as_bool(get("negated"), sub("negated")),
                         as_int(get("position"), sub("position"))};
  }
  if (kind == "DUMMY") {
    return DummyJobRole{as_one_based(get("index"), sub("index")) + 1, as_int(get("position"), sub("position"))};
  }
  fail(path + ".kind", "unknown job role '" + kind + "'");
}

json machine_role_to_json(const MachineRole& role) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        json o;
        if constexpr (std::is_same_v<T, EdgeSelectionMachine>) {
          o["kind"] = "EDGE_SELECTION";
          o["colors"] = json::array({r.color_low, r.color_high});
        } else if constexpr (std::is_same_v<T, CliqueValidationMachine>) {
          o["kind"] = "VALIDATION_MCC";
        } else if constexpr (std::is_same_v<T, VariableSelectionMachine>) {
          o["kind"] = "VARIABLE_SELECTION";
          o["variable"] = r.variable + 1;
        } else if constexpr (std::is_same_v<T, ClauseSelectionMachine>) {
          o["kind"] = "CLAUSE_SELECTION";
          o["clause"] = r.clause + 1;
          o["copy"] = r.copy;
        } else {
          o["kind"] = "VALIDATION_SAT";
          o["variable"] = r.variable + 1;
        }
        return o;
      },
      role);
}

MachineRole machine_role_from_json(const json& o, const std::string& path) {
  const auto kind = as_string(field(o, "kind", path), path + ".kind");
  if (kind == "EDGE_SELECTION") {
    const auto& colors = as_array(field(o, "colors", path), path + ".colors");
    if (colors.size() != 2) fail(path + ".colors", "expected two colors");
    return EdgeSelectionMachine{as_color(colors[0], path + ".colors[0]"), as_color(colors[1], path + ".colors[1]")};
  }
  if (kind == "VALIDATION_MCC") return CliqueValidationMachine{};
  if (kind == "VARIABLE_SELECTION") {
    return VariableSelectionMachine{as_one_based(field(o, "variable", path), path + ".variable")};
  }
  if (kind == "CLAUSE_SELECTION") {
    const auto copy = as_int(field(o, "copy", path), path + ".copy");
    if (copy != 1 && copy != 2) fail(path + ".copy", "copy must be 1 or 2");
    return ClauseSelectionMachine{as_one_based(field(o, "clause", path), path + ".clause"), static_cast<int>(copy)};
  }
  if (kind == "VALIDATION_SAT") {
    return SatValidationMachine{as_one_based(field(o, "variable", path), path + ".variable")};
  }
  fail(path + ".kind", "unknown machine role '" + kind + "'");
}

json instance_to_json(const Instance& instance) {
  json doc;
  doc["version"] = "1";
  doc["variant"] = std::string(to_string(instance.variant()));
  doc["machines"] = instance.machine_count();
  json jobs = json::array();
  for (std::size_t j = 0; j < instance.job_count(); ++j) {
    const Job& job = instance.job(j);
    json row = json::array();
    for (std::size_t i = 0; i < instance.machine_count(); ++i) {
      const auto p = instance.table().at(i, j);
      row.push_back(p ? json(*p) : json(nullptr));
    }
    jobs.push_back({{"id", job.id}, {"deadline", job.deadline}, {"weight", job.weight}, {"processing_times", row}});
  }
  doc["jobs"] = std::move(jobs);
  return doc;
}

Instance instance_from_json(const json& doc) {
  const auto version = as_string(field(doc, "version", "$"), "$.version");
  if (version != "1") fail("$.version", "unsupported version '" + version + "'");
  const Variant variant = [&] {
    try {
      return variant_from_string(as_string(field(doc, "variant", "$"), "$.variant"));
    } catch (const ValidationError& e) {
      fail("$.variant", e.what());
    }
  }();
  const std::size_t m = as_index(field(doc, "machines", "$"), "$.machines");
  if (m < 1) fail("$.machines", "need at least one machine");
  const auto& jobs_json = as_array(field(doc, "jobs", "$"), "$.jobs");
  std::vector<Job> jobs;
  ProcessingTable table(m, jobs_json.size());
  for (std::size_t j = 0; j < jobs_json.size(); ++j) {
    const std::string path = "$.jobs[" + std::to_string(j) + "]";
    const json& o = jobs_json[j];
    Job job{as_string(field(o, "id", path), path + ".id"), as_int(field(o, "deadline", path), path + ".deadline"),
            as_int(field(o, "weight", path), path + ".weight")};
    const auto& row = as_array(field(o, "processing_times", path), path + ".processing_times");
    if (row.size() != m) {
      fail(path + ".processing_times",
           "has " + std::to_string(row.size()) + " entries but machines = " + std::to_string(m));
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (row[i].is_null()) continue;
      const std::string ppath = path + ".processing_times[" + std::to_string(i) + "]";
      const auto p = as_int(row[i], ppath);
      if (p < 0) fail(ppath, "processing time must be >= 0");
      table.set(i, j, p);
    }
    jobs.push_back(std::move(job));
  }
  try {
    return Instance(std::move(jobs), std::move(table), variant);
  } catch (const ValidationError& e) {
    fail("$.jobs", e.what());
  }
}

}  // namespace

std::string write_instance(const Instance& instance) { return dump(instance_to_json(instance)); }

std::string write_instance(const ReductionArtifact& artifact) {
  artifact.validate();
  json doc = instance_to_json(artifact.instance);
  json ann;
  ann["target"] = artifact.target;
  if (artifact.mode) ann["mode"] = std::string(to_string(*artifact.mode));
  json machines = json::array();
  for (const auto& r : artifact.machine_roles) machines.push_back(machine_role_to_json(r));
  ann["machine_roles"] = std::move(machines);
  json roles = json::object();
  for (std::size_t j = 0; j < artifact.job_roles.size(); ++j) {
    roles[artifact.instance.job(j).id] = role_to_json(artifact.job_roles[j]);
  }
  ann["job_roles"] = std::move(roles);
  doc["annotations"] = std::move(ann);
  return dump(doc);
}

InstanceDocument parse_instance_document(std::string_view text) {
  const json doc = parse_json(text);
  Instance instance = instance_from_json(doc);
  auto it = doc.find("annotations");
  if (it == doc.end() || it->is_null()) return instance;

  const json& ann = *it;
  const Weight target = as_int(field(ann, "target", "$.annotations"), "$.annotations.target");
  std::optional<Mode> mode;
  if (auto mi = ann.find("mode"); mi != ann.end()) {
    try {
      mode = mode_from_string(as_string(*mi, "$.annotations.mode"));
    } catch (const ValidationError& e) {
      fail("$.annotations.mode", e.what());
    }
  }
  std::vector<MachineRole> machine_roles;
  const auto& mr = as_array(field(ann, "machine_roles", "$.annotations"), "$.annotations.machine_roles");
  for (std::size_t i = 0; i < mr.size(); ++i) {
    machine_roles.push_back(machine_role_from_json(mr[i], "$.annotations.machine_roles[" + std::to_string(i) + "]"));
  }
  const json& jr = field(ann, "job_roles", "$.annotations");
  if (!jr.is_object()) fail("$.annotations.job_roles", "expected an object");
  std::vector<JobRole> job_roles;
  for (const Job& job : instance.jobs()) {
    const std::string path = "$.annotations.job_roles[\"" + job.id + "\"]";
    auto ri = jr.find(job.id);
    if (ri == jr.end()) fail(path, "missing role");
    job_roles.push_back(role_from_json(*ri, path));
  }
  if (jr.size() != instance.job_count()) fail("$.annotations.job_roles", "roles for unknown job ids");

  ReductionArtifact artifact{std::move(instance), std::move(job_roles), std::move(machine_roles), target, mode};
  try {
    artifact.validate();
  } catch (const ValidationError& e) {
    fail("$.annotations", e.what());
  }
  return artifact;
}

Instance parse_instance(std::string_view text) {
  auto doc = parse_instance_document(text);
  if (auto* a = std::get_if<ReductionArtifact>(&doc)) return std::move(a->instance);
  return std::get<Instance>(std::move(doc));
}

ReductionArtifact parse_artifact(std::string_view text) {
  auto doc = parse_instance_document(text);
  if (auto* a = std::get_if<ReductionArtifact>(&doc)) return std::move(*a);
  throw ParseError("field '$.annotations': missing; not a reduction artifact");
}

std::string write_graph(const KPartiteGraph& graph) {
  json doc;
  doc["k"] = graph.k();
  doc["colors"] = graph.parts();
  json edges = json::array();
  for (const auto& [a, b] : graph.edges()) edges.push_back(json::array({a, b}));
  doc["edges"] = std::move(edges);
  return dump(doc);
}

KPartiteGraph parse_graph(std::string_view text) {
  const json doc = parse_json(text);
  const auto k = as_int(field(doc, "k", "$"), "$.k");
  const auto& colors = as_array(field(doc, "colors", "$"), "$.colors");
  if (static_cast<std::int64_t>(colors.size()) != k) {
    fail("$.colors", "has " + std::to_string(colors.size()) + " parts but k = " + std::to_string(k));
  }
  std::vector<std::vector<std::string>> parts;
  for (std::size_t c = 0; c < colors.size(); ++c) {
    const std::string path = "$.colors[" + std::to_string(c) + "]";
    std::vector<std::string> part;
    for (std::size_t i = 0; i < as_array(colors[c], path).size(); ++i) {
      part.push_back(as_string(colors[c][i], path + "[" + std::to_string(i) + "]"));
    }
    parts.push_back(std::move(part));
  }
  std::vector<KPartiteGraph::Edge> edges;
  const auto& ej = as_array(field(doc, "edges", "$"), "$.edges");
  for (std::size_t e = 0; e < ej.size(); ++e) {
    const std::string path = "$.edges[" + std::to_string(e) + "]";
    if (!ej[e].is_array() || ej[e].size() != 2) fail(path, "expected a pair of vertex ids");
    edges.emplace_back(as_string(ej[e][0], path + "[0]"), as_string(ej[e][1], path + "[1]"));
  }
  return KPartiteGraph(std::move(parts), std::move(edges));
}

std::string write_schedule(const Schedule& schedule) {
  json assignment = json::object();
  for (const auto& [id, placement] : schedule.entries()) {
    assignment[id] = placement ? json(*placement) : json(nullptr);
  }
  json doc;
  doc["assignment"] = std::move(assignment);
  return dump(doc);
}

Schedule parse_schedule(std::string_view text) {
  const json doc = parse_json(text);
  const json& a = field(doc, "assignment", "$");
  if (!a.is_object()) fail("$.assignment", "expected an object");
  Schedule s;
  for (auto it = a.begin(); it != a.end(); ++it) {
    const std::string path = "$.assignment[\"" + it.key() + "\"]";
    if (it.value().is_null()) {
      s.add(it.key(), std::nullopt);
    } else {
      s.add(it.key(), as_index(it.value(), path));
    }
  }
  return s;
}

std::string write_dimacs(const CnfFormula& formula) {
  formula.validate();
  std::string out = "p cnf " + std::to_string(formula.variable_count) + " " + std::to_string(formula.clauses.size()) + "\n";
  for (const auto& clause : formula.clauses) {
    for (const auto& lit : clause) {
      out += (lit.negated ? "-" : "") + std::to_string(lit.variable + 1) + " ";
    }
    out += "0\n";
  }
  return out;
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<Literal> current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line.remove_prefix(first);
    if (line[0] == 'c' || line[0] == '%') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line[0] == 'p') {
      if (have_header) throw ParseError(where + "duplicate header");
      char fmt[8] = {};
      long long vars = -1, clauses = -1;
      char extra = 0;
      const std::string copy(line);
      if (std::sscanf(copy.c_str(), "p %7s %lld %lld %c", fmt, &vars, &clauses, &extra) != 3 ||
          std::string_view(fmt) != "cnf" || vars < 0 || clauses < 0) {
        throw ParseError(where + "bad header '" + copy + "', expected 'p cnf <variables> <clauses>'");
      }
      f.variable_count = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(where + "clause before 'p cnf' header");
    std::size_t cursor = 0;
    while (cursor < line.size()) {
      while (cursor < line.size() && (line[cursor] == ' ' || line[cursor] == '\t' || line[cursor] == '\r')) ++cursor;
      if (cursor >= line.size()) break;
      std::size_t end = cursor;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
      const std::string_view tok = line.substr(cursor, end - cursor);
      cursor = end;
      long long lit = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(where + "bad literal '" + std::string(tok) + "'");
      }
      if (lit == 0) {
        const std::size_t index = f.clauses.size() + 1;
        if (current.size() != 3) {
          throw ValidationError(where + "clause " + std::to_string(index) + " has " + std::to_string(current.size()) +
                                " literals, expected exactly 3");
        }
        f.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        continue;
      }
      const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      if (var > f.variable_count) {
        throw ValidationError(where + "variable " + std::to_string(var) + " out of range 1.." +
                              std::to_string(f.variable_count));
      }
      current.push_back(Literal{var - 1, lit < 0});
    }
  }
  if (!have_header) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) throw ParseError("last clause is not terminated by 0");
  if (f.clauses.size() != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  }
  return f;
}

}  // namespace jitsched
