#include <doctest.h>

#include <set>

#include "mvrpb/instance.hpp"

using namespace mvrpb;

namespace {

const char* kThreeNode = R"(NAME : tiny
COMMENT : hand made
TYPE : CVRP
DIMENSION : 3
EDGE_WEIGHT_TYPE : EUC_2D
CAPACITY : 10
NODE_COORD_SECTION
1 0 0
2 3 4
3 6 8
DEMAND_SECTION
1 0
2 4
3 7
DEPOT_SECTION
 1
 -1
EOF
)";

Errc parse_error(const std::string& text) {
  try {
    parse_cvrp(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected parse failure");
  return Errc::Parse;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

}  // namespace

TEST_CASE("parse_cvrp reads the benchmark format") {
  const auto base = parse_cvrp(kThreeNode);
  CHECK(base.name == "tiny");
  CHECK(base.size() == 3);
  CHECK(base.capacity == 10);
  CHECK(base.coords[1] == Point{3, 4});
  CHECK(base.demand == std::vector<std::int64_t>{0, 4, 7});
}

TEST_CASE("parse_cvrp moves a non-first depot to index 0") {
  const std::string text = replace(replace(kThreeNode, "1 0\n2 4", "1 4\n2 0"), "DEPOT_SECTION\n 1", "DEPOT_SECTION\n 2");
  const auto base = parse_cvrp(text);
  CHECK(base.coords[0] == Point{3, 4});
  CHECK(base.coords[1] == Point{0, 0});
  CHECK(base.coords[2] == Point{6, 8});
  CHECK(base.demand == std::vector<std::int64_t>{0, 4, 7});
}

TEST_CASE("parse_cvrp errors") {
  CHECK(parse_error(replace(kThreeNode, "1 0\n2 4", "1 5\n2 4")) == Errc::DepotDemandNonzero);
  CHECK(parse_error(replace(kThreeNode, "CAPACITY : 10\n", "")) == Errc::MissingSection);
  CHECK(parse_error(replace(kThreeNode, "DIMENSION : 3\n", "")) == Errc::MissingSection);
  CHECK(parse_error(replace(kThreeNode, "2 3 4", "2 3.5 4")) == Errc::NonIntegerField);
  CHECK(parse_error(replace(kThreeNode, "CAPACITY : 10", "CAPACITY : ten")) == Errc::NonIntegerField);
  CHECK(parse_error(replace(kThreeNode, "DEMAND_SECTION\n1 0\n2 4\n3 7\n", "")) == Errc::MissingSection);
}

TEST_CASE("write_cvrp output parses back to the same base") {
  const auto base = synthesize_base("syn", 30, 100, 40, 1000, 5);
  CHECK(parse_cvrp(write_cvrp(base)) == base);
}

TEST_CASE("perturbed demand window") {
  CHECK(perturbed_demand_min(1) == 1);
  CHECK(perturbed_demand_max(1) == 2);
  CHECK(perturbed_demand_min(10) == 5);
  CHECK(perturbed_demand_max(10) == 15);
  CHECK(perturbed_demand_min(7) == 4);
  CHECK(perturbed_demand_max(7) == 11);
}

TEST_CASE("generate_mvrpb samples subsets and demands inside the window") {
  const auto base = synthesize_base("syn", 40, 60, 50, 1000, 11);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = generate_mvrpb(base, 6, 15, seed);
    REQUIRE(inst.horizon() == 6);
    CHECK_FALSE(inst.drivers.has_value());
    int clamped = 0;
    for (const auto& p : inst.periods) {
      REQUIRE(p.clients.size() == 15);
      CHECK(std::set<int>(p.clients.begin(), p.clients.end()).size() == 15);
      for (std::size_t i = 0; i < p.clients.size(); ++i) {
        const auto d = base.demand[p.clients[i]];
        const auto q = p.demands[i];
        CHECK(q <= base.capacity);
        CHECK(q >= perturbed_demand_min(d));
        CHECK(q <= perturbed_demand_max(d));
        if (q == base.capacity && perturbed_demand_max(d) > base.capacity) ++clamped;
      }
    }
    CHECK(inst.clamped_demands <= clamped);
  }
}

TEST_CASE("demand 1 draws both values and demand 10 covers its window") {
  CvrpBase base{"d", {{0, 0}, {1, 0}, {0, 1}}, {0, 1, 10}, 100};
  std::set<std::int64_t> ones, tens;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = generate_mvrpb(base, 1, 2, seed);
    for (std::size_t i = 0; i < 2; ++i) (inst.periods[0].clients[i] == 1 ? ones : tens).insert(inst.periods[0].demands[i]);
  }
  CHECK(ones == std::set<std::int64_t>{1, 2});
  CHECK(tens == std::set<std::int64_t>{5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
}

TEST_CASE("generation is deterministic and clamps above capacity") {
  const auto base = synthesize_base("syn", 25, 50, 50, 500, 3);
  CHECK(serialize_instance(generate_mvrpb(base, 4, 10, 99)) == serialize_instance(generate_mvrpb(base, 4, 10, 99)));
  CHECK(generate_mvrpb(base, 4, 10, 99) != generate_mvrpb(base, 4, 10, 100));

  CvrpBase full{"full", {{0, 0}, {1, 0}}, {0, 10}, 10};
  int clamps = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto inst = generate_mvrpb(full, 1, 1, s);
    CHECK(inst.periods[0].demands[0] <= 10);
    clamps += inst.clamped_demands;
  }
  CHECK(clamps > 0);

  try {
    generate_mvrpb(base, 2, 26, 1);
    FAIL("expected TooFewClients");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooFewClients);
  }
}

TEST_CASE("period streams do not depend on the horizon length") {
  const auto base = synthesize_base("syn", 25, 50, 30, 500, 3);
  const auto longer = generate_mvrpb(base, 10, 8, 42);
  const auto shorter = generate_mvrpb(base, 5, 8, 42);
  for (int t = 0; t < 5; ++t) CHECK(longer.periods[t] == shorter.periods[t]);
}

TEST_CASE("truncate_horizon keeps a prefix and the driver count") {
  const auto base = synthesize_base("syn", 30, 80, 30, 500, 8);
  auto inst = generate_mvrpb(base, 10, 12, 4);
  inst.drivers = 6;
  CHECK(truncate_horizon(inst, 10) == inst);
  const auto one = truncate_horizon(inst, 1);
  CHECK(one.horizon() == 1);
  CHECK(one.drivers == 6);
  const auto five = truncate_horizon(inst, 5);
  for (int t = 0; t < 5; ++t) CHECK(five.periods[t] == inst.periods[t]);
  for (int bad : {0, 11}) {
    try {
      truncate_horizon(inst, bad);
      FAIL("expected InvalidHorizon");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidHorizon);
    }
  }
}

TEST_CASE("derive_driver_count") {
  auto plans_with = [](std::vector<int> counts) {
    std::vector<PeriodPlan> plans;
    for (int c : counts) {
      PeriodPlan p;
      p.routes.resize(c);
      plans.push_back(p);
    }
    return plans;
  };
  CHECK(derive_driver_count(plans_with({4, 7, 5})) == 7);
  CHECK(derive_driver_count(plans_with({3, 3, 3})) == 3);
  CHECK_THROWS_AS(derive_driver_count(plans_with({3, 0})), Error);
  CHECK_THROWS_AS(derive_driver_count(std::vector<PeriodPlan>{}), Error);
}

TEST_CASE("instance files round-trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto base = synthesize_base("rt" + std::to_string(seed), 20, 60, 40, 300, seed);
    auto inst = generate_mvrpb(base, 3, 7, seed * 31);
    if (seed % 2) inst.drivers = 4;
    CHECK(parse_instance(serialize_instance(inst)) == inst);
  }
  CHECK_THROWS_AS(parse_instance(R"({"schema":"other/1"})"), Error);
  CHECK_THROWS_AS(parse_instance("not json"), Error);
}
