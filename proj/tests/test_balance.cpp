#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvrpb/balance.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mvrpb;
using mvrpb::testing::max_routes;
using mvrpb::testing::random_distances;

namespace {

// periods {5,3} and {4,4}, the running two-driver example
std::vector<PeriodPlan> worked_example() { return plans_from_distances({{5, 3}, {4, 4}}); }

Dist max_load(std::span<const PeriodPlan> plans, const Assignment& asg, int m) {
  const auto loads = driver_loads(plans, asg, m);
  return *std::max_element(loads.begin(), loads.end());
}

void check_witness(std::span<const PeriodPlan> plans, const Assignment& asg, int m, Dist cap) {
  const auto report = validate_assignment(plans, asg, m);
  for (const auto& v : report) INFO(v.message);
  CHECK(report.empty());
  CHECK(max_load(plans, asg, m) <= cap);
}

}  // namespace

TEST_CASE("workload lower bound") {
  CHECK(workload_lower_bound(plans_from_distances({{40, 30}, {30}}), 3) == 34);
  CHECK(workload_lower_bound(plans_from_distances({{40}, {30}, {30}}), 1) == 100);
  CHECK(workload_lower_bound(worked_example(), 2) == 8);
  try {
    workload_lower_bound(worked_example(), 1);
    FAIL("expected InsufficientDrivers");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientDrivers);
  }
}

TEST_CASE("construction heuristic") {
  SUBCASE("one route per period and one driver") {
    const auto plans = plans_from_distances({{7}, {5}, {9}});
    CHECK(construct_initial(plans, 1).second == 21);
  }
  SUBCASE("worked example") {
    const auto plans = worked_example();
    const auto [asg, ub] = construct_initial(plans, 2);
    CHECK(ub == 9);
    // 5 -> d0, 4 -> d1, 4 -> d0 (d1 busy in period 2), 3 -> d1
    CHECK(asg.drivers == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(driver_loads(plans, asg, 2) == std::vector<Dist>{9, 7});
    CHECK(ub >= oracle::brute_force_balance(plans, 2));
  }
  SUBCASE("identical routes filling every driver reach the bound") {
    const auto plans = plans_from_distances({{6, 6, 6}, {6, 6, 6}, {6, 6, 6}, {6, 6, 6}});
    CHECK(construct_initial(plans, 3).second == 24);
    CHECK(workload_lower_bound(plans, 3) == 24);
  }
}

TEST_CASE("feasibility on the worked example") {
  const auto plans = worked_example();
  const auto yes = feasible(plans, 2, 9);
  REQUIRE(yes.feasible());
  REQUIRE(yes.witness);
  check_witness(plans, *yes.witness, 2, 9);
  auto loads = driver_loads(plans, *yes.witness, 2);
  std::sort(loads.begin(), loads.end());
  CHECK(loads == std::vector<Dist>{7, 9});

  const auto no = feasible(plans, 2, 8);
  CHECK(no.verdict == Verdict::Infeasible);
  CHECK_FALSE(no.witness);

  CHECK(feasible(plans, 2, 16).feasible());
  CHECK(feasible(plans, 3, 16).feasible());
  CHECK_THROWS_AS(feasible(plans, 1, 100), Error);
}

TEST_CASE("node limit turns a probe into Unknown and the result into a bracket") {
  Rng rng(4);
  const auto plans = plans_from_distances(random_distances(rng, 8, 4, 97));
  const auto out = feasible(plans, 4, workload_lower_bound(plans, 4), SearchLimits{1, 0.0});
  CHECK(out.verdict == Verdict::Unknown);
  const auto res = optimize_balance(plans, 4, SearchLimits{1, 0.0});
  CHECK(res.status == BalanceStatus::Bracket);
  CHECK(res.bracket_lo >= res.lb);
  CHECK(res.bracket_hi == res.opt);
  CHECK(res.opt <= res.ub);
  check_witness(plans, res.assignment, 4, res.opt);
}

TEST_CASE("optimize_balance examples") {
  SUBCASE("identical routes: first probe succeeds") {
    const auto plans = plans_from_distances({{6, 6, 6}, {6, 6, 6}});
    const auto res = optimize_balance(plans, 3);
    CHECK(res.opt == res.lb);
    CHECK(res.iterations == 1);
  }
  SUBCASE("worked example") {
    const auto res = optimize_balance(worked_example(), 2);
    CHECK(res.lb == 8);
    CHECK(res.ub == 9);
    CHECK(res.opt == 9);
    CHECK(res.status == BalanceStatus::Optimal);
    CHECK(res.iterations == 1);
    REQUIRE(res.probes.size() == 1);
    CHECK(res.probes[0].cap == 8);
    CHECK(res.probes[0].verdict == Verdict::Infeasible);
    check_witness(worked_example(), res.assignment, 2, 9);
  }
  SUBCASE("single period with one route per driver") {
    const auto plans = plans_from_distances({{12, 40, 7}});
    CHECK(optimize_balance(plans, 3).opt == 40);
  }
}

TEST_CASE("gap_percent") {
  CHECK(gap_percent(8, 8) == 0.0);
  CHECK(format_fixed(gap_percent(8, 8)) == "0.00");
  CHECK(format_fixed(gap_percent(9, 8)) == "12.50");
  CHECK(format_fixed(gap_percent(101, 100)) == "1.00");
  try {
    gap_percent(5, 0);
    FAIL("expected DegenerateBound");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateBound);
  }
}

TEST_CASE("brute-force oracle examples") {
  CHECK(oracle::brute_force_balance(worked_example(), 2) == 9);
  CHECK(oracle::brute_force_balance(plans_from_distances({{13}}), 1) == 13);
  CHECK_THROWS_AS(oracle::brute_force_balance(plans_from_distances({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}), 5, 100), Error);
}

TEST_CASE("optimize_balance properties on small random inputs") {
  Rng rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    const int periods = static_cast<int>(uniform_int(rng, 1, 4));
    const auto dist = random_distances(rng, periods, 3, 50);
    const int m = static_cast<int>(uniform_int(rng, max_routes(dist), 3));
    const auto plans = plans_from_distances(dist);
    const auto res = optimize_balance(plans, m);
    CAPTURE(trial);

    CHECK(res.status == BalanceStatus::Optimal);
    CHECK(res.opt == oracle::brute_force_balance(plans, m));
    CHECK(res.lb <= res.opt);
    CHECK(res.opt <= res.ub);
    check_witness(plans, res.assignment, m, res.opt);

    // monotone around the optimum; the stop rule holds
    CHECK(feasible(plans, m, res.opt).feasible());
    CHECK(feasible(plans, m, res.opt + 1).feasible());
    if (res.opt > res.lb) CHECK(feasible(plans, m, res.opt - 1).verdict == Verdict::Infeasible);

    // probe count
    if (res.ub > res.lb)
      CHECK(res.iterations <= 2 + static_cast<int>(std::ceil(std::log2(double(res.ub - res.lb + 1)))));
    if (res.opt == res.lb) CHECK(res.iterations == 1);

    // relabelled drivers give the same max load
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());
    Assignment relabelled = res.assignment;
    for (auto& row : relabelled.drivers)
      for (auto& k : row) k = perm[k];
    CHECK(validate_assignment(plans, relabelled, m).empty());
    CHECK(max_load(plans, relabelled, m) == max_load(plans, res.assignment, m));
  }
}

TEST_CASE("optimal workload scales with distances") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dist = random_distances(rng, static_cast<int>(uniform_int(rng, 1, 4)), 3, 50);
    const int m = static_cast<int>(uniform_int(rng, max_routes(dist), 3));
    const Dist base = optimize_balance(plans_from_distances(dist), m).opt;
    for (Dist k : {2, 7}) {
      auto scaled = dist;
      for (auto& p : scaled)
        for (auto& d : p) d *= k;
      CHECK(optimize_balance(plans_from_distances(scaled), m).opt == k * base);
    }
  }
}

TEST_CASE("feasibility agrees with brute force on every cap") {
  Rng rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    const auto dist = random_distances(rng, static_cast<int>(uniform_int(rng, 1, 4)), 3, 20);
    const int m = static_cast<int>(uniform_int(rng, max_routes(dist), 3));
    const auto plans = plans_from_distances(dist);
    const Dist best = oracle::brute_force_balance(plans, m);
    for (Dist cap = std::max<Dist>(0, best - 5); cap <= best + 5; ++cap) {
      const auto out = feasible(plans, m, cap);
      CHECK(out.feasible() == (cap >= best));
      if (out.feasible()) check_witness(plans, *out.witness, m, cap);
    }
  }
}

TEST_CASE("larger horizons solve within the node budget") {
  Rng rng(555);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dist = random_distances(rng, 10, 5, 1000);
    const int m = max_routes(dist) + static_cast<int>(uniform_below(rng, 2));
    const auto plans = plans_from_distances(dist);
    const auto res = optimize_balance(plans, m);
    CHECK(res.status == BalanceStatus::Optimal);
    CHECK(res.lb <= res.opt);
    CHECK(res.opt <= res.ub);
    check_witness(plans, res.assignment, m, res.opt);
  }
}

TEST_CASE("very long routes skip the reach tables and still solve exactly") {
  Rng rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    auto dist = random_distances(rng, static_cast<int>(uniform_int(rng, 1, 4)), 3, 50);
    const int m = static_cast<int>(uniform_int(rng, max_routes(dist), 3));
    for (auto& p : dist)
      for (auto& d : p) d = d * 10'000'000 + uniform_int(rng, 0, 9);
    const auto plans = plans_from_distances(dist);
    const auto res = optimize_balance(plans, m);
    CAPTURE(trial);
    CHECK(res.status == BalanceStatus::Optimal);
    CHECK(res.opt == oracle::brute_force_balance(plans, m));
    check_witness(plans, res.assignment, m, res.opt);
  }
}
