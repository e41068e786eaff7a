#include <algorithm>

#include "jitsched/reductions.hpp"

namespace jitsched {

namespace {

std::string edge_key(const std::string& a, const std::string& b) {
  return a < b ? a + '\n' + b : b + '\n' + a;
}

}  // namespace

KPartiteGraph::KPartiteGraph(std::vector<std::vector<std::string>> parts, std::vector<Edge> edges)
    : parts_(std::move(parts)), edges_(std::move(edges)) {
  if (parts_.size() < 2) {
    throw ValidationError("k-partite graph needs k >= 2 colors, got " + std::to_string(parts_.size()));
  }
  for (std::size_t c = 0; c < parts_.size(); ++c) {
    for (const auto& v : parts_[c]) {
      if (!color_.emplace(v, static_cast<int>(c) + 1).second) {
        throw ValidationError("vertex '" + v + "' appears more than once");
      }
    }
  }
  for (const auto& [a, b] : edges_) {
    const auto ia = color_.find(a);
    const auto ib = color_.find(b);
    if (ia == color_.end() || ib == color_.end()) {
      throw ValidationError("edge {" + a + "," + b + "} names an unknown vertex");
    }
    if (ia->second == ib->second) {
      throw ValidationError("edge {" + a + "," + b + "} joins two vertices of color " +
                            std::to_string(ia->second));
    }
    if (!edge_keys_.insert(edge_key(a, b)).second) {
      throw ValidationError("duplicate edge {" + a + "," + b + "}");
    }
  }
}

int KPartiteGraph::color_of(const std::string& vertex) const {
  auto it = color_.find(vertex);
  if (it == color_.end()) throw UsageError("unknown vertex '" + vertex + "'");
  return it->second;
}

bool KPartiteGraph::has_edge(const std::string& a, const std::string& b) const {
  return edge_keys_.contains(edge_key(a, b));
}

VertexOrdering vertex_ordering(const KPartiteGraph& graph) {
  VertexOrdering out;
  for (const auto& part : graph.parts()) {
    for (const auto& v : part) {
      out.vertices.push_back(v);
      out.position.emplace(v, static_cast<Time>(out.vertices.size()));
    }
  }
  return out;
}

void CnfFormula::validate() const {
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    for (const auto& lit : clauses[c]) {
      if (lit.variable >= variable_count) {
        throw ValidationError("clause " + std::to_string(c + 1) + " uses variable " +
                              std::to_string(lit.variable + 1) + " but the formula has " +
                              std::to_string(variable_count));
      }
    }
  }
}

std::vector<std::size_t> CnfFormula::occurrences() const {
  std::vector<std::size_t> count(variable_count, 0);
  for (const auto& clause : clauses) {
    for (const auto& lit : clause) {
      if (lit.variable < variable_count) ++count[lit.variable];
    }
  }
  return count;
}

std::vector<std::size_t> CnfFormula::strict34_offenders() const {
  std::vector<std::size_t> bad;
  const auto count = occurrences();
  for (std::size_t x = 0; x < count.size(); ++x) {
    if (count[x] != 4) bad.push_back(x);
  }
  return bad;
}

bool satisfies(const CnfFormula& formula, const TruthAssignment& assignment) {
  if (assignment.size() != formula.variable_count) return false;
  return std::all_of(formula.clauses.begin(), formula.clauses.end(), [&](const Clause& clause) {
    return std::any_of(clause.begin(), clause.end(),
                       [&](const Literal& lit) { return assignment[lit.variable] != lit.negated; });
  });
}

std::optional<CliqueWitness> brute_force_clique(const KPartiteGraph& graph, std::uint64_t budget) {
  std::uint64_t combos = 1;
  for (const auto& part : graph.parts()) {
    if (part.empty()) return std::nullopt;
    if (__builtin_mul_overflow(combos, part.size(), &combos) || combos > budget) {
      throw ResourceError("clique enumeration exceeds budget " + std::to_string(budget));
    }
  }
  const auto& parts = graph.parts();
  std::vector<std::string> chosen;
  // Partial choices with a missing edge are cut; the first full clique found
  // is still the lexicographically first one.
  auto rec = [&](auto&& self, std::size_t c) -> bool {
    if (c == parts.size()) return true;
    for (const auto& v : parts[c]) {
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](const std::string& u) { return graph.has_edge(u, v); });
      if (!ok) continue;
      chosen.push_back(v);
      if (self(self, c + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return CliqueWitness{std::move(chosen)};
}

std::optional<TruthAssignment> brute_force_sat(const CnfFormula& formula, std::size_t max_variables) {
  formula.validate();
  const std::size_t n = formula.variable_count;
  if (n > max_variables || n >= 63) {
    throw ResourceError("brute-force SAT limited to " + std::to_string(max_variables) + " variables, formula has " +
                        std::to_string(n));
  }
  TruthAssignment a(n, false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t x = 0; x < n; ++x) a[x] = (mask >> (n - 1 - x)) & 1u;
    if (satisfies(formula, a)) return a;
  }
  return std::nullopt;
}

}  // namespace jitsched
