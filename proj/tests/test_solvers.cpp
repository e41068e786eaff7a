#include <doctest.h>

#include <algorithm>

#include "jitsched/reductions.hpp"
#include "jitsched/solvers.hpp"
#include "test_util.hpp"

using namespace jitsched;

namespace {

Instance three_jobs() {
  ProcessingTable t(1, 3);
  t.set(0, 0, 2);
  t.set(0, 1, 1);
  t.set(0, 2, 2);
  return Instance({{"j1", 2, 5}, {"j2", 3, 4}, {"j3", 3, 7}}, t, Variant::Eligible);
}

void check_result(const Instance& inst, const OptResult& r) {
  const auto v = validate_schedule(inst, r.schedule);
  CHECK(v.feasible);
  CHECK(v.total_weight == r.optimum);
}

}  // namespace

TEST_CASE("three-job single-machine example has optimum 9") {
  const auto inst = three_jobs();
  const auto dp = solve_frontier_dp(inst);
  CHECK(dp.optimum == 9);
  CHECK(dp.schedule.at("j1") == Placement{0});
  CHECK(dp.schedule.at("j2") == Placement{0});
  CHECK_FALSE(dp.schedule.at("j3"));
  check_result(inst, dp);
  CHECK(solve_brute_force(inst).optimum == 9);
  CHECK(solve_single_machine(inst).optimum == 9);
  CHECK(solve_frontier_dp(inst, FrontierOptions{true}).optimum == 9);
}

TEST_CASE("empty and ineligible instances") {
  Instance empty({}, ProcessingTable(1, 0), Variant::Eligible);
  CHECK(solve_frontier_dp(empty).optimum == 0);
  CHECK(solve_brute_force(empty).optimum == 0);
  CHECK(solve_single_machine(empty).optimum == 0);
  CHECK(solve_all_jobs_decision(empty).schedule.has_value());

  Instance none({{"a", 3, 5}, {"b", 4, 6}}, ProcessingTable(2, 2), Variant::Eligible);
  const auto r = solve_brute_force(none);
  CHECK(r.optimum == 0);
  CHECK(r.schedule.scheduled_count() == 0);
  CHECK(solve_frontier_dp(none).optimum == 0);
  CHECK_FALSE(solve_all_jobs_decision(none).schedule);
}

TEST_CASE("single eligible job") {
  ProcessingTable t(2, 1);
  t.set(1, 0, 2);
  Instance inst({{"a", 4, 7}}, t, Variant::Eligible);
  CHECK(solve_brute_force(inst).optimum == 7);
  const auto d = solve_all_jobs_decision(inst);
  REQUIRE(d.schedule);
  CHECK(d.schedule->at("a") == Placement{1});
}

TEST_CASE("single-machine solver") {
  SUBCASE("pairwise conflicting jobs give the heaviest one") {
    ProcessingTable t(1, 3);
    for (std::size_t j = 0; j < 3; ++j) t.set(0, j, 5);
    Instance inst({{"a", 5, 3}, {"b", 6, 8}, {"c", 7, 2}}, t, Variant::Eligible);
    CHECK(solve_single_machine(inst).optimum == 8);
  }
  SUBCASE("zero-duration job adds its weight") {
    ProcessingTable t(1, 4);
    t.set(0, 0, 2);
    t.set(0, 1, 1);
    t.set(0, 2, 2);
    t.set(0, 3, 0);
    Instance inst({{"j1", 2, 5}, {"j2", 3, 4}, {"j3", 3, 7}, {"z", 2, 5}}, t, Variant::Eligible);
    const auto r = solve_single_machine(inst);
    CHECK(r.optimum == 14);
    check_result(inst, r);
  }
  SUBCASE("m != 1 is a usage error") {
    Instance inst({}, ProcessingTable(2, 0), Variant::Eligible);
    CHECK_THROWS_AS(solve_single_machine(inst), UsageError);
  }
}

TEST_CASE("brute force refuses oversize enumerations") {
  const auto inst = test::random_instance(3, 8, 3);
  CHECK_THROWS_AS(solve_brute_force(inst, BruteForceOptions{1}), ResourceError);
}

TEST_CASE("oracle agreement on random instances") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto variant = seed % 2 ? Variant::Unrelated : Variant::Eligible;
    const auto inst = test::random_instance(seed, 8, 3, variant);
    const auto dp = solve_frontier_dp(inst);
    const auto pruned = solve_frontier_dp(inst, FrontierOptions{true});
    const auto bf = solve_brute_force(inst);
    INFO("seed " << seed);
    CHECK(dp.optimum == bf.optimum);
    CHECK(pruned.optimum == bf.optimum);
    check_result(inst, dp);
    check_result(inst, pruned);
    check_result(inst, bf);
    if (inst.machine_count() == 1) CHECK(solve_single_machine(inst).optimum == bf.optimum);

    const std::uint64_t n = inst.job_count();
    std::uint64_t bound = 1;
    for (std::size_t i = 0; i < inst.machine_count(); ++i) bound *= n + 1;
    for (auto s : dp.stats.states_per_layer) CHECK(s <= bound);
  }
}

TEST_CASE("all-jobs decision agrees with the unit-weight frontier DP") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto src = test::random_instance(seed, 7, 3);
    std::vector<Job> jobs = src.jobs();
    for (auto& j : jobs) j.weight = 1;
    Instance unit(jobs, src.table(), src.variant());
    const auto d = solve_all_jobs_decision(unit);
    const bool all = solve_frontier_dp(unit).optimum == static_cast<Weight>(unit.job_count());
    INFO("seed " << seed);
    CHECK(d.schedule.has_value() == all);
    if (d.schedule) {
      const auto v = validate_schedule(unit, *d.schedule);
      CHECK(v.feasible);
      CHECK(d.schedule->scheduled_count() == unit.job_count());
    }
  }
}

TEST_CASE("deleting a job moves the optimum by at most its weight") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = test::random_instance(seed, 7, 2);
    if (inst.job_count() == 0) continue;
    const Weight opt = solve_frontier_dp(inst).optimum;
    for (std::size_t drop = 0; drop < inst.job_count(); ++drop) {
      std::vector<Job> jobs;
      ProcessingTable t(inst.machine_count(), inst.job_count() - 1);
      for (std::size_t j = 0, k = 0; j < inst.job_count(); ++j) {
        if (j == drop) continue;
        jobs.push_back(inst.job(j));
        for (std::size_t i = 0; i < inst.machine_count(); ++i) t.set(i, k, inst.table().at(i, j));
        ++k;
      }
      const Weight reduced = solve_frontier_dp(Instance(jobs, t, inst.variant())).optimum;
      CHECK(reduced <= opt);
      CHECK(reduced >= opt - inst.job(drop).weight);
    }
  }
}

TEST_CASE("decision solver on the satisfiability examples") {
  const auto sat = sat_to_uisum(test::phi_one());
  const auto d = solve_all_jobs_decision(sat.instance);
  REQUIRE(d.schedule);
  CHECK(d.schedule->scheduled_count() == 9);
  CHECK(validate_schedule(sat.instance, *d.schedule).feasible);

  const auto unsat = sat_to_uisum(test::phi_unsat());
  CHECK(unsat.instance.job_count() == 14);
  CHECK(unsat.instance.machine_count() == 6);
  CHECK_FALSE(solve_all_jobs_decision(unsat.instance).schedule);
  CHECK_THROWS_AS(solve_all_jobs_decision(unsat.instance, DecisionOptions{5}), ResourceError);
}

TEST_CASE("frontier DP on the two-vertex clique artifact") {
  const auto art = mcc_to_isem(test::g2());
  const auto r = solve_frontier_dp(art.instance);
  CHECK(r.optimum == 243);
  check_result(art.instance, r);
  CHECK(solve_brute_force(art.instance).optimum == 243);
}

TEST_CASE("frontier DP layer budget") {
  const auto art = mcc_to_isem(test::triangle());
  CHECK_THROWS_AS(solve_frontier_dp(art.instance, FrontierOptions{false, 2}), ResourceError);
}
