#include <doctest.h>

#include "jitsched/generators.hpp"
#include "jitsched/io.hpp"
#include "jitsched/solvers.hpp"

using namespace jitsched;

TEST_CASE("probability parsing") {
  CHECK(Probability::parse("0.3") == Probability{3, 10});
  CHECK(Probability::parse("1") == Probability{1, 1});
  CHECK(Probability::parse("3/8") == Probability{3, 8});
  CHECK_THROWS(Probability::parse("1.5"));
  CHECK_THROWS(Probability::parse("x"));
  CHECK_THROWS(Probability::parse("1/0"));
}

TEST_CASE("k-partite generator") {
  SUBCASE("probability one gives the complete k-partite graph") {
    const auto g = gen_kpartite({3, {2, 3, 1}, Probability{1, 1}, false, 4}).graph;
    CHECK(g.edges().size() == 2 * 3 + 2 * 1 + 3 * 1);
    CHECK(brute_force_clique(g));
  }
  SUBCASE("probability zero without planting is edgeless") {
    const auto g = gen_kpartite({3, {2, 2, 2}, Probability{0, 1}, false, 4}).graph;
    CHECK(g.edges().empty());
    CHECK_FALSE(brute_force_clique(g));
  }
  SUBCASE("planting alone gives exactly C(k,2) edges") {
    const auto gen = gen_kpartite({4, {2, 2, 2, 2}, Probability{0, 1}, true, 4});
    CHECK(gen.graph.edges().size() == 6);
    REQUIRE(gen.planted);
    CHECK(brute_force_clique(gen.graph));
  }
  SUBCASE("deterministic per seed") {
    const GraphGenSpec spec{3, {3, 3, 3}, Probability{1, 2}, true, 99};
    CHECK(write_graph(gen_kpartite(spec).graph) == write_graph(gen_kpartite(spec).graph));
  }
}

TEST_CASE("3-CNF generator") {
  const auto strict = gen_3cnf({3, 4, true, 1});
  CHECK(strict.clauses.size() == 4);
  for (auto c : strict.occurrences()) CHECK(c == 4);
  const auto one = gen_3cnf({1, 1, false, 2});
  REQUIRE(one.clauses.size() == 1);
  for (const auto& lit : one.clauses[0]) CHECK(lit.variable == 0);
  CHECK_THROWS_AS(gen_3cnf({1, 1, true, 0}), UsageError);
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(gen_3cnf({6, 8, true, seed}).is_strict34());
  CHECK(write_dimacs(gen_3cnf({4, 5, false, 3})) == write_dimacs(gen_3cnf({4, 5, false, 3})));
}

TEST_CASE("random instance generator") {
  InstanceGenSpec spec;
  spec.jobs = 0;
  CHECK(gen_random_instance(spec).job_count() == 0);

  spec.jobs = 8;
  spec.machines = 3;
  spec.eligibility = Probability{0, 1};
  CHECK(solve_frontier_dp(gen_random_instance(spec)).optimum == 0);

  spec.eligibility = Probability{3, 4};
  spec.seed = 17;
  const auto a = gen_random_instance(spec);
  CHECK(write_instance(a) == write_instance(gen_random_instance(spec)));
  for (const auto& j : a.jobs()) {
    CHECK(j.deadline >= 1);
    CHECK(j.deadline <= 12);
    CHECK(j.weight <= 100);
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if (auto p = a.table().at(i, j)) CHECK(*p <= 12);

  spec.variant = Variant::Unrelated;
  CHECK(gen_random_instance(spec).table().is_unrelated());
}

TEST_CASE("trial seeds differ per index") {
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 5) == trial_seed(1, 5));
}
