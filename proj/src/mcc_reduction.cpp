#include <algorithm>
#include <map>
#include <tuple>

#include "jitsched/reductions.hpp"

namespace jitsched {

namespace {

std::string vertex_job_id(const std::string& v, int color) { return "v[" + v + "," + std::to_string(color) + "]"; }

std::string edge_job_id(const std::string& a, const std::string& b) { return "e[" + a + "," + b + "]"; }

std::string combo_job_id(const std::string& v, int lo, int hi) {
  return "cc[" + v + "," + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

std::int64_t pair_count(std::int64_t k) { return checked_mul(k, k - 1) / 2; }

/// Lookup tables over the roles of a clique artifact.
struct CliqueIndex {
  std::map<std::pair<std::string, int>, std::size_t> vertex_job;  // (v, job color)
  std::map<std::pair<std::string, std::string>, std::size_t> edge_job;  // (low, high)
  std::map<std::tuple<std::string, int, int>, std::size_t> combo_job;
  std::map<std::pair<int, int>, std::size_t> edge_machine;
  std::map<std::string, int> color;  // vertex -> color
  std::vector<std::string> vertices;  // position order
  std::size_t validation_machine = 0;
  int k = 0;

  explicit CliqueIndex(const ReductionArtifact& artifact) {
    if (!artifact.mode) {
      throw UsageError("artifact was not produced by the clique reduction");
    }
    std::vector<std::pair<Time, std::string>> by_position;
    for (std::size_t j = 0; j < artifact.job_roles.size(); ++j) {
      const auto& role = artifact.job_roles[j];
      if (const auto* r = std::get_if<VertexJobRole>(&role)) {
        vertex_job[{r->vertex, r->job_color}] = j;
        if (color.emplace(r->vertex, r->vertex_color).second) by_position.emplace_back(r->position, r->vertex);
        k = std::max({k, r->job_color, r->vertex_color});
      } else if (const auto* e = std::get_if<EdgeJobRole>(&role)) {
        edge_job[{e->low, e->high}] = j;
      } else if (const auto* c = std::get_if<ComboJobRole>(&role)) {
        combo_job[{c->vertex, c->color_low, c->color_high}] = j;
      } else {
        throw UsageError("artifact contains roles of the satisfiability reduction");
      }
    }
    std::sort(by_position.begin(), by_position.end());
    for (auto& [pos, v] : by_position) vertices.push_back(v);
    bool have_validation = false;
    for (std::size_t i = 0; i < artifact.machine_roles.size(); ++i) {
      const auto& role = artifact.machine_roles[i];
      if (const auto* e = std::get_if<EdgeSelectionMachine>(&role)) {
        edge_machine[{e->color_low, e->color_high}] = i;
      } else if (std::holds_alternative<CliqueValidationMachine>(role)) {
        validation_machine = i;
        have_validation = true;
      } else {
        throw UsageError("artifact contains machines of the satisfiability reduction");
      }
    }
    if (!have_validation) throw UsageError("clique artifact has no validation machine");
  }

  std::size_t vertex(const std::string& v, int job_color) const { return vertex_job.at({v, job_color}); }
  std::size_t combo(const std::string& v, int lo, int hi) const { return combo_job.at({v, lo, hi}); }

  std::optional<std::size_t> edge(const std::string& a, const std::string& b) const {
    auto it = edge_job.find({a, b});
    if (it == edge_job.end()) it = edge_job.find({b, a});
    if (it == edge_job.end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::Verbatim ? "VERBATIM" : "PATCHED"; }

Mode mode_from_string(std::string_view s) {
  if (s == "VERBATIM" || s == "verbatim") return Mode::Verbatim;
  if (s == "PATCHED" || s == "patched") return Mode::Patched;
  throw ValidationError("unknown mode '" + std::string(s) + "'");
}

WeightConstants weight_constants(std::int64_t k, std::int64_t n) {
  WeightConstants c;
  c.c1 = checked_add(n, 1);
  c.c2 = checked_add(checked_add(checked_mul(checked_mul(k - 1, n), c.c1), n), 1);
  const std::int64_t spread = checked_add(checked_mul(k, n), checked_mul(checked_mul(k, k), n));
  c.c3 = checked_add(checked_mul(checked_mul(spread, n), c.c2), 1);
  return c;
}

WeightConstants weight_constants(const KPartiteGraph& graph) {
  return weight_constants(graph.k(), static_cast<std::int64_t>(graph.vertex_count()));
}

Weight mcc_target(std::int64_t k, std::int64_t n) {
  const auto c = weight_constants(k, n);
  const std::int64_t pairs = pair_count(k);
  Weight w = checked_mul(pairs, c.c3);
  w = checked_add(w, checked_mul(checked_mul(pairs, n), c.c2));
  w = checked_add(w, checked_mul(checked_mul(k - 1, n), c.c1));
  return checked_add(w, k);
}

Weight mcc_target(const KPartiteGraph& graph) {
  return mcc_target(graph.k(), static_cast<std::int64_t>(graph.vertex_count()));
}

ReductionArtifact mcc_to_isem(const KPartiteGraph& graph, Mode mode) {
  const int k = graph.k();
  if (k < 2) throw UsageError("clique reduction needs k >= 2");
  const std::int64_t n = static_cast<std::int64_t>(graph.vertex_count());
  const auto c = weight_constants(graph);
  const auto order = vertex_ordering(graph);
  const std::int64_t slot = k + 2;

  std::vector<std::pair<int, int>> pairs;
  for (int lo = 1; lo <= k; ++lo) {
    for (int hi = lo + 1; hi <= k; ++hi) pairs.emplace_back(lo, hi);
  }
  auto pair_machine = [&](int a, int b) -> std::size_t {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    return static_cast<std::size_t>(std::find(pairs.begin(), pairs.end(), key) - pairs.begin());
  };
  const std::size_t validation = pairs.size();
  const std::size_t m = pairs.size() + 1;

  struct Pending {
    Job job;
    JobRole role;
    Time duration;
    std::vector<std::size_t> machines;
  };
  std::vector<Pending> pending;

  for (const auto& v : order.vertices) {
    const int own = graph.color_of(v);
    const Time pos = order.position.at(v);
    for (int lc = 1; lc <= k; ++lc) {
      Pending p;
      p.role = VertexJobRole{v, own, lc, pos};
      p.job.id = vertex_job_id(v, lc);
      if (lc == own) {
        p.duration = slot;
        p.job.deadline = checked_add(checked_mul(slot, pos), 1);
        p.job.weight = 1;
        p.machines = {validation};
      } else {
        p.duration = 1;
        p.job.deadline = checked_sub(checked_mul(slot, pos), lc);
        p.job.weight = c.c1;
        p.machines = {pair_machine(own, lc), validation};
      }
      pending.push_back(std::move(p));
    }
  }

  for (const auto& [a, b] : graph.edges()) {
    const bool a_low = graph.color_of(a) < graph.color_of(b);
    const std::string& v = a_low ? a : b;
    const std::string& w = a_low ? b : a;
    const int lo = graph.color_of(v);
    const int hi = graph.color_of(w);
    const Time pv = order.position.at(v);
    const Time pw = order.position.at(w);
    Pending p;
    p.role = EdgeJobRole{v, w, lo, hi, pv, pw};
    p.job.id = edge_job_id(v, w);
    p.duration = checked_add(checked_sub(checked_mul(slot, pw - pv), lo), hi);
    if (mode == Mode::Patched) p.duration -= 1;
    p.job.deadline = checked_sub(checked_sub(checked_mul(slot, pw), lo), 1);
    p.job.weight = checked_add(checked_mul(c.c2, pw - pv), c.c3);
    p.machines = {pair_machine(lo, hi)};
    pending.push_back(std::move(p));
  }

  for (const auto& [lo, hi] : pairs) {
    const std::size_t machine = pair_machine(lo, hi);
    for (const auto& v : graph.parts()[static_cast<std::size_t>(lo - 1)]) {
      const Time pv = order.position.at(v);
      Pending p;
      p.role = ComboJobRole{v, lo, hi, pv};
      p.job.id = combo_job_id(v, lo, hi);
      p.duration = checked_sub(checked_sub(checked_mul(slot, pv), hi), 2);
      p.job.deadline = checked_sub(checked_sub(checked_mul(slot, pv), hi), 1);
      p.job.weight = checked_mul(c.c2, pv);
      p.machines = {machine};
      pending.push_back(std::move(p));
    }
    for (const auto& w : graph.parts()[static_cast<std::size_t>(hi - 1)]) {
      const Time pw = order.position.at(w);
      Pending p;
      p.role = ComboJobRole{w, lo, hi, pw};
      p.job.id = combo_job_id(w, lo, hi);
      p.duration = checked_add(checked_add(checked_mul(slot, n - pw), lo), 2);
      p.job.deadline = checked_add(checked_mul(slot, n), 2);
      p.job.weight = checked_mul(c.c2, n - pw);
      p.machines = {machine};
      pending.push_back(std::move(p));
    }
  }

  std::vector<Job> jobs;
  std::vector<JobRole> roles;
  ProcessingTable table(m, pending.size());
  for (std::size_t j = 0; j < pending.size(); ++j) {
    for (std::size_t i : pending[j].machines) table.set(i, j, pending[j].duration);
    jobs.push_back(std::move(pending[j].job));
    roles.push_back(std::move(pending[j].role));
  }

  std::vector<MachineRole> machine_roles;
  for (const auto& [lo, hi] : pairs) machine_roles.emplace_back(EdgeSelectionMachine{lo, hi});
  machine_roles.emplace_back(CliqueValidationMachine{});

  return ReductionArtifact{Instance(std::move(jobs), std::move(table), Variant::Eligible), std::move(roles),
                           std::move(machine_roles), mcc_target(graph), mode};
}

Schedule schedule_from_clique(const ReductionArtifact& artifact, const CliqueWitness& clique) {
  const CliqueIndex index(artifact);
  const int k = index.k;
  if (static_cast<int>(clique.vertices.size()) != k) {
    throw WitnessError("clique witness has " + std::to_string(clique.vertices.size()) + " vertices, expected " +
                       std::to_string(k));
  }
  for (int c = 1; c <= k; ++c) {
    const auto& v = clique.vertices[static_cast<std::size_t>(c - 1)];
    auto it = index.color.find(v);
    if (it == index.color.end() || it->second != c) {
      throw WitnessError("witness vertex '" + v + "' is not of color " + std::to_string(c));
    }
  }

  std::vector<Placement> placed(artifact.instance.job_count());
  for (int lo = 1; lo <= k; ++lo) {
    for (int hi = lo + 1; hi <= k; ++hi) {
      const auto& v = clique.vertices[static_cast<std::size_t>(lo - 1)];
      const auto& w = clique.vertices[static_cast<std::size_t>(hi - 1)];
      const auto e = index.edge(v, w);
      if (!e) throw WitnessError("witness is not a clique: {" + v + "," + w + "} is not an edge");
      const std::size_t machine = index.edge_machine.at({lo, hi});
      placed[*e] = machine;
      placed[index.combo(v, lo, hi)] = machine;
      placed[index.combo(w, lo, hi)] = machine;
      placed[index.vertex(v, hi)] = machine;
      placed[index.vertex(w, lo)] = machine;
    }
  }
  for (const auto& u : index.vertices) {
    const int own = index.color.at(u);
    const bool in_clique = clique.vertices[static_cast<std::size_t>(own - 1)] == u;
    if (in_clique) {
      placed[index.vertex(u, own)] = index.validation_machine;
      continue;
    }
    for (int lc = 1; lc <= k; ++lc) {
      if (lc != own) placed[index.vertex(u, lc)] = index.validation_machine;
    }
  }
  return Schedule::from_placements(artifact.instance, placed);
}

CliqueExtraction clique_from_schedule(const ReductionArtifact& artifact, const Schedule& schedule) {
  const CliqueIndex index(artifact);
  const auto report = validate_schedule(artifact.instance, schedule);
  if (!report.feasible) throw UsageError("clique extraction needs a feasible schedule");
  if (report.total_weight < artifact.target) {
    throw UsageError("schedule weight " + std::to_string(report.total_weight) + " is below target " +
                     std::to_string(artifact.target));
  }
  const auto placed = placements_of(artifact.instance, schedule);

  std::vector<std::vector<std::string>> chosen(static_cast<std::size_t>(index.k));
  for (const auto& v : index.vertices) {
    const int own = index.color.at(v);
    if (placed[index.vertex(v, own)]) chosen[static_cast<std::size_t>(own - 1)].push_back(v);
  }

  CliqueExtraction out;
  std::string listing;
  for (int c = 1; c <= index.k; ++c) {
    listing += " color " + std::to_string(c) + ": {";
    for (std::size_t q = 0; q < chosen[static_cast<std::size_t>(c - 1)].size(); ++q) {
      listing += (q ? "," : "") + chosen[static_cast<std::size_t>(c - 1)][q];
    }
    listing += "}";
  }
  for (int c = 1; c <= index.k; ++c) {
    if (chosen[static_cast<std::size_t>(c - 1)].empty()) {
      out.diagnostics = "no on-color vertex job scheduled for color " + std::to_string(c) + ";" + listing;
      return out;
    }
  }

  std::vector<std::string> pick;
  auto rec = [&](auto&& self, std::size_t c) -> bool {
    if (c == chosen.size()) return true;
    for (const auto& v : chosen[c]) {
      const bool ok = std::all_of(pick.begin(), pick.end(), [&](const auto& u) { return index.edge(u, v).has_value(); });
      if (!ok) continue;
      pick.push_back(v);
      if (self(self, c + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (rec(rec, 0)) {
    out.clique = CliqueWitness{std::move(pick)};
  } else {
    std::string missing;
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen.size(); ++b) {
        for (const auto& u : chosen[a]) {
          for (const auto& v : chosen[b]) {
            if (!index.edge(u, v)) missing += " {" + u + "," + v + "}";
          }
        }
      }
    }
    out.diagnostics = "scheduled on-color vertices do not form a clique;" + listing + "; missing edges:" + missing;
  }
  return out;
}

std::vector<std::size_t> edge_jobs_per_machine(const ReductionArtifact& artifact, const Schedule& schedule) {
  const CliqueIndex index(artifact);
  const auto placed = placements_of(artifact.instance, schedule);
  std::vector<std::size_t> count(index.edge_machine.size(), 0);
  for (std::size_t j = 0; j < placed.size(); ++j) {
    if (placed[j] && std::holds_alternative<EdgeJobRole>(artifact.job_roles[j]) && *placed[j] < count.size()) {
      ++count[*placed[j]];
    }
  }
  return count;
}

}  // namespace jitsched
