#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "jitsched/core.hpp"
#include "jitsched/reductions.hpp"

namespace jitsched {

/// All sampling draws from std::mt19937_64 seeded with the 64-bit seed.
using Rng = std::mt19937_64;

/// Exact probability num/den, 0 <= num <= den.
struct Probability {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// Accepts "0.35", "1", "3/8".
  static Probability parse(std::string_view text);
  bool sample(Rng& rng) const;
  std::string str() const;

  bool operator==(const Probability&) const = default;
};

struct GraphGenSpec {
  int k = 2;
  std::vector<std::size_t> sizes;  // per color; sizes.size() == k
  Probability edge_prob;
  bool plant_clique = false;
  std::uint64_t seed = 0;
};

struct GeneratedGraph {
  KPartiteGraph graph;
  std::optional<CliqueWitness> planted;
};

/// Vertices are named "v<color>_<i>". Cross-color pairs are sampled in
/// (color, color, vertex, vertex) order; a planted clique takes one uniform
/// vertex per color and forces its pairs in.
GeneratedGraph gen_kpartite(const GraphGenSpec& spec);

struct CnfGenSpec {
  std::size_t variables = 1;
  std::size_t clauses = 1;
  bool strict34 = false;
  std::uint64_t seed = 0;
};

/// Non-strict: every literal slot gets a uniform variable and polarity.
/// Strict: the 3*clauses literal slots are a random permutation of the
/// 4*variables occurrence slots. Throws UsageError when strict and
/// 3*clauses != 4*variables.
CnfFormula gen_3cnf(const CnfGenSpec& spec);

struct InstanceGenSpec {
  std::size_t jobs = 0;
  std::size_t machines = 1;
  Time max_deadline = 12;
  Time max_duration = 12;
  Weight max_weight = 100;
  Probability eligibility{1, 1};
  /// ELIGIBLE draws one duration per job; UNRELATED draws one per entry and
  /// makes every entry eligible (eligibility is ignored).
  Variant variant = Variant::Eligible;
  std::uint64_t seed = 0;
};

Instance gen_random_instance(const InstanceGenSpec& spec);

/// Seed of trial `index` under a base seed (splitmix64 mixing).
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

}  // namespace jitsched
