#include "jitsched/generators.hpp"

#include <algorithm>
#include <charconv>

namespace jitsched {

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t uniform(Rng& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

}  // namespace

Probability Probability::parse(std::string_view text) {
  Probability p;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    p.num = parse_u64(text.substr(0, slash), "probability");
    p.den = parse_u64(text.substr(slash + 1), "probability");
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 18) throw UsageError("probability '" + std::string(text) + "' has too many digits");
    p.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) p.den *= 10;
    p.num = (whole.empty() ? 0 : parse_u64(whole, "probability")) * p.den + (frac.empty() ? 0 : parse_u64(frac, "probability"));
  } else {
    p.num = parse_u64(text, "probability");
    p.den = 1;
  }
  if (p.den == 0 || p.num > p.den) throw UsageError("probability '" + std::string(text) + "' outside [0,1]");
  return p;
}

bool Probability::sample(Rng& rng) const {
  if (num == 0) return false;
  if (num == den) return true;
  return uniform(rng, den) < num;
}

std::string Probability::str() const { return std::to_string(num) + "/" + std::to_string(den); }

GeneratedGraph gen_kpartite(const GraphGenSpec& spec) {
  if (spec.k < 2) throw UsageError("k must be >= 2");
  if (spec.sizes.size() != static_cast<std::size_t>(spec.k)) {
    throw UsageError("need one part size per color");
  }
  if (std::any_of(spec.sizes.begin(), spec.sizes.end(), [](std::size_t s) { return s == 0; })) {
    throw UsageError("part sizes must be positive");
  }
  Rng rng(spec.seed);
  std::vector<std::vector<std::string>> parts(static_cast<std::size_t>(spec.k));
  for (std::size_t c = 0; c < parts.size(); ++c) {
    for (std::size_t i = 0; i < spec.sizes[c]; ++i) {
      parts[c].push_back("v" + std::to_string(c + 1) + "_" + std::to_string(i));
    }
  }

  std::vector<std::size_t> planted(parts.size(), 0);
  if (spec.plant_clique) {
    for (std::size_t c = 0; c < parts.size(); ++c) planted[c] = uniform(rng, parts[c].size());
  }

  std::vector<KPartiteGraph::Edge> edges;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      for (std::size_t u = 0; u < parts[a].size(); ++u) {
        for (std::size_t v = 0; v < parts[b].size(); ++v) {
          const bool sampled = spec.edge_prob.sample(rng);
          const bool forced = spec.plant_clique && planted[a] == u && planted[b] == v;
          if (sampled || forced) edges.emplace_back(parts[a][u], parts[b][v]);
        }
      }
    }
  }

  std::optional<CliqueWitness> witness;
  if (spec.plant_clique) {
    witness.emplace();
    for (std::size_t c = 0; c < parts.size(); ++c) witness->vertices.push_back(parts[c][planted[c]]);
  }
  return {KPartiteGraph(std::move(parts), std::move(edges)), std::move(witness)};
}

CnfFormula gen_3cnf(const CnfGenSpec& spec) {
  if (spec.strict34 && 3 * spec.clauses != 4 * spec.variables) {
    throw UsageError("exact (3,4) formulas need 3*clauses == 4*variables, got " + std::to_string(spec.clauses) +
                     " clauses and " + std::to_string(spec.variables) + " variables");
  }
  if (spec.variables == 0 && spec.clauses > 0) throw UsageError("clauses need at least one variable");
  Rng rng(spec.seed);
  CnfFormula f;
  f.variable_count = spec.variables;
  f.clauses.resize(spec.clauses);
  if (spec.strict34) {
    std::vector<std::size_t> slots;
    for (std::size_t x = 0; x < spec.variables; ++x) slots.insert(slots.end(), 4, x);
    std::shuffle(slots.begin(), slots.end(), rng);
    for (std::size_t c = 0; c < spec.clauses; ++c) {
      for (std::size_t l = 0; l < 3; ++l) {
        f.clauses[c][l] = Literal{slots[3 * c + l], uniform(rng, 2) == 1};
      }
    }
  } else {
    for (auto& clause : f.clauses) {
      for (auto& lit : clause) {
        lit.variable = uniform(rng, spec.variables);
        lit.negated = uniform(rng, 2) == 1;
      }
    }
  }
  return f;
}

Instance gen_random_instance(const InstanceGenSpec& spec) {
  if (spec.machines < 1 || spec.max_deadline < 1 || spec.max_duration < 0 || spec.max_weight < 0) {
    throw UsageError("instance generator bounds must be positive");
  }
  Rng rng(spec.seed);
  auto draw = [&](Time lo, Time hi) {
    return static_cast<Time>(lo + static_cast<Time>(uniform(rng, static_cast<std::uint64_t>(hi - lo + 1))));
  };
  std::vector<Job> jobs;
  ProcessingTable table(spec.machines, spec.jobs);
  for (std::size_t j = 0; j < spec.jobs; ++j) {
    Job job{"j" + std::to_string(j), draw(1, spec.max_deadline), draw(0, spec.max_weight)};
    if (spec.variant == Variant::UnrelatedUnweighted) job.weight = 1;
    if (spec.variant == Variant::Eligible) {
      const Time p = draw(0, spec.max_duration);
      for (std::size_t i = 0; i < spec.machines; ++i) {
        if (spec.eligibility.sample(rng)) table.set(i, j, p);
      }
    } else {
      for (std::size_t i = 0; i < spec.machines; ++i) table.set(i, j, draw(0, spec.max_duration));
    }
    jobs.push_back(std::move(job));
  }
  return Instance(std::move(jobs), std::move(table), spec.variant);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace jitsched
