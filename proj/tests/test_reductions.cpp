#include <doctest.h>

#include <set>

#include "jitsched/generators.hpp"
#include "jitsched/reductions.hpp"
#include "jitsched/solvers.hpp"
#include "test_util.hpp"

using namespace jitsched;

namespace {

Interval iv(const Instance& inst, const std::string& id, std::size_t machine) {
  const auto r = interval_of(inst, id, machine);
  REQUIRE(r);
  return *r;
}

}  // namespace

TEST_CASE("vertex ordering is color-monotone with input order inside a color") {
  const auto o = vertex_ordering(test::g2());
  CHECK(o.position.at("a") == 1);
  CHECK(o.position.at("b") == 2);
  const auto o2 = vertex_ordering(KPartiteGraph({{"a", "b"}, {"c"}}, {}));
  CHECK(o2.vertices == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(KPartiteGraph({{"a"}}, {}), ValidationError);
  CHECK_THROWS_AS(KPartiteGraph({{"a", "b"}, {"c"}}, {{"a", "b"}}), ValidationError);
  CHECK_THROWS_AS(KPartiteGraph({{"a"}, {"a"}}, {}), ValidationError);
  CHECK_THROWS_AS(KPartiteGraph({{"a"}, {"b"}}, {{"a", "b"}, {"b", "a"}}), ValidationError);
  CHECK_THROWS_AS(KPartiteGraph({{"a"}, {"b"}}, {{"a", "z"}}), ValidationError);
}

TEST_CASE("weight constants and targets") {
  CHECK(weight_constants(2, 2) == WeightConstants{3, 9, 217});
  CHECK(weight_constants(3, 3) == WeightConstants{4, 28, 3025});
  CHECK(weight_constants(3, 6) == WeightConstants{7, 91, 39313});
  CHECK(mcc_target(test::g2()) == 243);
  CHECK(mcc_target(test::triangle()) == 9354);
  CHECK(mcc_target(3, 6) == 119664);
  CHECK_THROWS_AS(weight_constants(1000, 1'000'000), OverflowError);
}

TEST_CASE("two-vertex construction") {
  const auto patched = mcc_to_isem(test::g2());
  const auto verbatim = mcc_to_isem(test::g2(), Mode::Verbatim);
  const auto& inst = patched.instance;
  CHECK(inst.job_count() == 7);
  CHECK(inst.machine_count() == 2);
  CHECK(inst.variant() == Variant::Eligible);
  CHECK(patched.target == 243);
  CHECK(patched.mode == Mode::Patched);
  CHECK(verbatim.mode == Mode::Verbatim);

  const auto& e = inst.job(inst.position("e[a,b]"));
  CHECK(e.deadline == 6);
  CHECK(e.weight == 226);
  CHECK(iv(inst, "e[a,b]", 0) == Interval{2, 6});
  CHECK(iv(verbatim.instance, "e[a,b]", 0) == Interval{1, 6});
  CHECK_FALSE(interval_of(inst, "e[a,b]", 1));

  const auto& ca = inst.job(inst.position("cc[a,1,2]"));
  CHECK(ca.weight == 9);
  CHECK(iv(inst, "cc[a,1,2]", 0) == Interval{1, 1});
  const auto& cb = inst.job(inst.position("cc[b,1,2]"));
  CHECK(cb.weight == 0);
  CHECK(iv(inst, "cc[b,1,2]", 0) == Interval{7, 10});

  CHECK(iv(inst, "v[a,2]", 0) == Interval{1, 2});
  CHECK(iv(inst, "v[b,1]", 0) == Interval{6, 7});
  CHECK(iv(inst, "v[a,1]", 1) == Interval{1, 5});
  CHECK(iv(inst, "v[b,2]", 1) == Interval{5, 9});
  CHECK_FALSE(interval_of(inst, "v[a,1]", 0));
}

TEST_CASE("clique witness schedules") {
  SUBCASE("two vertices, patched") {
    const auto art = mcc_to_isem(test::g2());
    const auto s = schedule_from_clique(art, CliqueWitness{{"a", "b"}});
    const auto r = validate_schedule(art.instance, s);
    CHECK(r.feasible);
    CHECK(r.total_weight == 243);
    const auto x = clique_from_schedule(art, s);
    REQUIRE(x.clique);
    CHECK(x.clique->vertices == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("two vertices, verbatim conflicts once") {
    const auto art = mcc_to_isem(test::g2(), Mode::Verbatim);
    const auto r = validate_schedule(art.instance, schedule_from_clique(art, CliqueWitness{{"a", "b"}}));
    CHECK_FALSE(r.feasible);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].machine == 0);
    CHECK(r.violations[0].kind == Violation::Kind::Conflict);
    const std::set<std::string> pair{r.violations[0].job, r.violations[0].other_job};
    CHECK(pair == std::set<std::string>{"v[a,2]", "e[a,b]"});
  }
  SUBCASE("triangle") {
    const auto art = mcc_to_isem(test::triangle());
    const auto s = schedule_from_clique(art, CliqueWitness{{"a", "b", "c"}});
    const auto r = validate_schedule(art.instance, s);
    CHECK(r.feasible);
    CHECK(r.total_weight == 9354);
    const auto x = clique_from_schedule(art, s);
    REQUIRE(x.clique);
    CHECK(x.clique->vertices == std::vector<std::string>{"a", "b", "c"});
  }
  SUBCASE("non-clique witness is rejected") {
    const KPartiteGraph g({{"a"}, {"b"}, {"c"}}, {{"a", "b"}, {"a", "c"}});
    const auto art = mcc_to_isem(g);
    CHECK_THROWS_AS(schedule_from_clique(art, CliqueWitness{{"a", "b", "c"}}), WitnessError);
    CHECK_THROWS_AS(schedule_from_clique(art, CliqueWitness{{"a", "b"}}), WitnessError);
  }
  SUBCASE("extraction needs a feasible threshold-meeting schedule") {
    const auto art = mcc_to_isem(test::g2());
    CHECK_THROWS_AS(clique_from_schedule(art, Schedule::all_rejected(art.instance)), UsageError);
  }
}

TEST_CASE("frontier optimum on the two-vertex artifact yields a clique") {
  const auto art = mcc_to_isem(test::g2());
  const auto r = solve_frontier_dp(art.instance);
  CHECK(r.optimum == 243);
  const auto x = clique_from_schedule(art, r.schedule);
  REQUIRE(x.clique);
  CHECK(x.clique->vertices.size() == 2);
}

TEST_CASE("brute-force clique oracle") {
  const auto w = brute_force_clique(test::triangle());
  REQUIRE(w);
  CHECK(w->vertices == std::vector<std::string>{"a", "b", "c"});
  CHECK_FALSE(brute_force_clique(KPartiteGraph({{"a"}, {"b"}, {"c"}}, {{"a", "b"}, {"a", "c"}})));
  CHECK(brute_force_clique(test::g2()));
  CHECK_FALSE(brute_force_clique(KPartiteGraph({{"a"}, {"b"}}, {})));
}

TEST_CASE("construction-1 shape invariants on generated graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    GraphGenSpec spec{k, std::vector<std::size_t>(static_cast<std::size_t>(k), 1 + seed % 3), Probability{1, 2},
                      seed % 2 == 0, seed};
    const auto g = gen_kpartite(spec).graph;
    const auto art = mcc_to_isem(g);
    const auto c = weight_constants(g);
    const auto n = static_cast<Weight>(g.vertex_count());
    CHECK(c.c2 == (k - 1) * n * c.c1 + n + 1);
    CHECK(c.c3 == (k * n + k * k * n) * n * c.c2 + 1);
    std::size_t combos = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) combos += g.parts()[a].size() + g.parts()[b].size();
    CHECK(art.instance.job_count() == static_cast<std::size_t>(k) * g.vertex_count() + g.edges().size() + combos);
    CHECK(art.instance.machine_count() == static_cast<std::size_t>(k * (k - 1) / 2 + 1));
    for (const auto& j : art.instance.jobs()) CHECK(j.weight <= n * c.c2 + c.c3);
    for (std::size_t j = 0; j < art.instance.job_count(); ++j) {
      if (!std::holds_alternative<EdgeJobRole>(art.job_roles[j])) continue;
      std::size_t eligible = 0;
      for (std::size_t i = 0; i < art.instance.machine_count(); ++i) eligible += art.instance.table().eligible(i, j);
      CHECK(eligible == 1);
    }
  }
}

TEST_CASE("satisfiability job order and intervals") {
  const auto order = sat_job_order(test::phi_one());
  REQUIRE(order.size() == 9);
  std::vector<std::string> ids;
  for (const auto& j : order) ids.push_back(j.id);
  CHECK(ids == std::vector<std::string>{"d1", "d2", "d3", "d4", "c1_3", "x1^F", "c1_1", "c1_2", "x1^T"});

  const auto art = sat_to_uisum(test::phi_one());
  const auto& inst = art.instance;
  CHECK(inst.machine_count() == 4);
  CHECK(art.target == 9);
  CHECK(inst.variant() == Variant::UnrelatedUnweighted);
  CHECK(iv(inst, "x1^T", 0) == Interval{4, 9});
  CHECK(iv(inst, "x1^F", 0) == Interval{4, 6});
  CHECK(iv(inst, "c1_1", 1) == Interval{4, 7});
  CHECK(iv(inst, "c1_2", 2) == Interval{4, 8});
  CHECK(iv(inst, "c1_3", 1) == Interval{4, 5});
  CHECK(iv(inst, "x1^T", 3) == Interval{5, 9});
  CHECK(iv(inst, "x1^F", 3) == Interval{4, 6});
  CHECK(iv(inst, "c1_1", 3) == Interval{6, 7});
  CHECK(iv(inst, "c1_2", 3) == Interval{7, 8});
  CHECK(iv(inst, "c1_3", 3) == Interval{4, 5});
  CHECK(iv(inst, "d1", 3) == Interval{0, 1});
}

TEST_CASE("satisfying assignments give all-jobs schedules and come back") {
  const auto art = sat_to_uisum(test::phi_one());
  for (bool x : {true, false}) {
    const auto s = schedule_from_assignment(art, TruthAssignment{x});
    const auto r = validate_schedule(art.instance, s);
    CHECK(r.feasible);
    CHECK(s.scheduled_count() == 9);
    CHECK(assignment_from_schedule(art, s) == TruthAssignment{x});
  }
  const CnfFormula all_pos{1, {Clause{Literal{0, false}, Literal{0, false}, Literal{0, false}}}};
  CHECK_THROWS_AS(schedule_from_assignment(sat_to_uisum(all_pos), TruthAssignment{false}), WitnessError);
  CHECK_THROWS_AS(assignment_from_schedule(art, Schedule::all_rejected(art.instance)), UsageError);
}

TEST_CASE("brute-force satisfiability oracle") {
  CHECK(brute_force_sat(CnfFormula{2, {}}) == TruthAssignment{false, false});
  CHECK(brute_force_sat(test::phi_one()) == TruthAssignment{false});
  CHECK_FALSE(brute_force_sat(test::phi_unsat()));
  CHECK_THROWS_AS(brute_force_sat(CnfFormula{30, {}}), ResourceError);
}

TEST_CASE("strict (3,4) validation") {
  CHECK_THROWS_AS(sat_to_uisum(test::phi_one(), true), ValidationError);
  const auto f = gen_3cnf({3, 4, true, 5});
  CHECK(f.is_strict34());
  CHECK_NOTHROW(sat_to_uisum(f, true));
}

TEST_CASE("construction-2 shape on generated formulas") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto f = gen_3cnf({1 + seed % 4, 1 + seed % 5, false, seed});
    const auto art = sat_to_uisum(f);
    const std::size_t a = f.variable_count, b = f.clauses.size();
    CHECK(art.instance.machine_count() == 2 * a + 2 * b);
    CHECK(art.instance.job_count() == 4 * a + 5 * b);
    CHECK(art.target == static_cast<Weight>(4 * a + 5 * b));
    std::vector<std::size_t> dummies, blocked_any;
    for (std::size_t j = 0; j < art.job_roles.size(); ++j)
      if (std::holds_alternative<DummyJobRole>(art.job_roles[j])) dummies.push_back(j);
    CHECK(dummies.size() == art.instance.machine_count());
    for (std::size_t i = 0; i < art.instance.machine_count(); ++i) {
      for (std::size_t j = 0; j < art.instance.job_count(); ++j) {
        const auto p = art.instance.table().at(i, j);
        REQUIRE(p);
        if (*p != art.instance.job(j).deadline) continue;
        for (std::size_t d : dummies) {
          if (d == j) continue;
          CHECK(intervals_conflict(*interval_of(art.instance, j, i), *interval_of(art.instance, d, i)));
        }
      }
    }
    const auto w = brute_force_sat(f);
    if (w) {
      const auto s = schedule_from_assignment(art, *w);
      CHECK(validate_schedule(art.instance, s).feasible);
      CHECK(satisfies(f, assignment_from_schedule(art, s)));
    }
  }
}

TEST_CASE("planted cliques round-trip through the witness schedule") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    const auto gen = gen_kpartite({k, std::vector<std::size_t>(static_cast<std::size_t>(k), 3), Probability{2, 5}, true, seed});
    const auto art = mcc_to_isem(gen.graph);
    const auto s = schedule_from_clique(art, *gen.planted);
    const auto r = validate_schedule(art.instance, s);
    CHECK(r.feasible);
    CHECK(r.total_weight == art.target);
    const auto x = clique_from_schedule(art, s);
    REQUIRE(x.clique);
    for (std::size_t a = 0; a < x.clique->vertices.size(); ++a)
      for (std::size_t b = a + 1; b < x.clique->vertices.size(); ++b)
        CHECK(gen.graph.has_edge(x.clique->vertices[a], x.clique->vertices[b]));
  }
}
