#include <doctest.h>

#include <filesystem>
#include <map>

#include "mvrpb/harness.hpp"
#include "mvrpb/instance.hpp"
#include "mvrpb/rng.hpp"

using namespace mvrpb;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mvrpb_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

CvrpBase small_base() { return synthesize_base("small", 30, 60, 20, 300, 21); }

}  // namespace

TEST_CASE("quartiles use linear interpolation") {
  const std::vector<double> five{0, 1, 2, 3, 4};
  CHECK(quantile(five, 0.25) == doctest::Approx(1.0));
  CHECK(quantile(five, 0.5) == doctest::Approx(2.0));
  CHECK(quantile(five, 0.75) == doctest::Approx(3.0));
  const std::vector<double> four{1, 2, 3, 10};
  CHECK(quantile(four, 0.25) == doctest::Approx(1.75));
  CHECK(quantile(four, 0.5) == doctest::Approx(2.5));

  const auto s = box_stats({0, 1, 2, 3, 4, 20});
  CHECK(s.q1 == doctest::Approx(1.25));
  CHECK(s.q3 == doctest::Approx(3.75));
  CHECK(s.whisker_low == doctest::Approx(0.0));
  CHECK(s.whisker_high == doctest::Approx(7.5));
  REQUIRE(s.outliers.size() == 1);
  CHECK(s.outliers[0] == 20);
}

TEST_CASE("run_pipeline composes the module calls") {
  const auto inst = generate_mvrpb(small_base(), 3, 8, 7);
  PipelineOptions opt;
  opt.mode = SolveMode::Exact;
  const auto run = run_pipeline(inst, "tiny", opt);

  const auto plans = solve_all_periods(inst, SolveMode::Exact, {}, 1);
  const int m = derive_driver_count(plans);
  const auto manual = optimize_balance(plans, m);
  CHECK(run.plans == plans);
  CHECK(run.record.drivers == m);
  CHECK(run.record.lb == manual.lb);
  CHECK(run.record.ub == manual.ub);
  CHECK(run.record.opt == manual.opt);
  CHECK(run.record.iterations == manual.iterations);
  CHECK(run.record.total_distance == total_distance(plans));
  CHECK(run.record.routes_proven_optimal);
  CHECK(run.record.horizon == 3);
  CHECK(run.record.clients_per_period == 8);
  CHECK(run.record.gap == doctest::Approx(gap_percent(run.record.opt, run.record.lb)));

  auto with_drivers = inst;
  with_drivers.drivers = m;
  const auto report = validate_solution(with_drivers, run.plans, run.balance.assignment);
  for (const auto& v : report) INFO(v.message);
  CHECK(report.empty());
}

TEST_CASE("run_pipeline is deterministic and tags failing stages") {
  const auto inst = generate_mvrpb(small_base(), 3, 12, 70);
  PipelineOptions opt;
  opt.budget.iterations = 60;
  const auto a = run_pipeline(inst, "x", opt).record;
  const auto b = run_pipeline(inst, "x", opt).record;
  CHECK(raw_csv(std::vector<RunRecord>{a}) == raw_csv(std::vector<RunRecord>{b}));

  opt.drivers = 1;
  try {
    run_pipeline(inst, "x", opt);
    FAIL("expected InsufficientDrivers");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientDrivers);
    CHECK(e.stage() == "balancing");
  }
}

TEST_CASE("study with one replicate and one horizon is a single pipeline run") {
  StudyOptions so;
  so.clients_per_period = 10;
  so.horizons = {3};
  so.replicates = 1;
  so.seed = 5;
  so.pipeline.budget.iterations = 40;
  const auto records = run_horizon_study(small_base(), so);
  REQUIRE(records.size() == 1);

  // the study's first replicate generates from stream 0 of the master seed
  const auto inst = generate_mvrpb(small_base(), 3, 10, stream_seed(5, 0));
  PipelineOptions po = so.pipeline;
  po.seed = stream_seed(5, 0);
  const auto run = run_pipeline(inst, records[0].instance, po);
  CHECK(raw_csv(records) == raw_csv(std::vector<RunRecord>{run.record}));
}

TEST_CASE("study truncates a shared master and keeps the driver count") {
  StudyOptions so;
  so.clients_per_period = 12;
  so.horizons = {2, 3, 5};
  so.replicates = 3;
  so.seed = 17;
  so.pipeline.budget.iterations = 40;
  const auto records = run_horizon_study(small_base(), so);
  REQUIRE(records.size() == 9);
  std::map<std::string, int> drivers;
  for (const auto& r : records) {
    CHECK(r.lb <= r.opt);
    CHECK(r.opt <= r.ub);
    if (drivers.contains(r.instance)) CHECK(drivers[r.instance] == r.drivers);
    drivers[r.instance] = r.drivers;
  }
  CHECK(drivers.size() == 3);
  // canonical ordering
  CHECK(std::is_sorted(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.instance, a.horizon) < std::tie(b.instance, b.horizon);
  }));

  // thread count does not change anything written to CSV
  so.pipeline.threads = 3;
  CHECK(raw_csv(run_horizon_study(small_base(), so)) == raw_csv(records));
}

TEST_CASE("reports") {
  StudyOptions so;
  so.clients_per_period = 12;
  so.horizons = {2, 4};
  so.replicates = 4;
  so.seed = 3;
  so.pipeline.budget.iterations = 30;
  const auto records = run_horizon_study(small_base(), so);
  const auto dir = scratch_dir("reports");
  emit_reports(records, dir.string());
  for (const char* f : {"raw.csv", "by_horizon.csv", "boxplot_data.csv", "summary.txt"})
    CHECK(std::filesystem::exists(dir / f));

  SUBCASE("raw csv reloads to the same records") {
    const auto reloaded = parse_raw_csv(read_file((dir / "raw.csv").string()));
    REQUIRE(reloaded.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      auto expected = records[i];
      expected.phase1_seconds = expected.phase2_seconds = 0;
      CHECK(reloaded[i] == expected);
    }
  }

  SUBCASE("aggregates are recomputable from raw csv alone") {
    const auto reloaded = parse_raw_csv(read_file((dir / "raw.csv").string()));
    const auto rows = aggregate_by_horizon(reloaded);
    CHECK(by_horizon_csv(rows) == read_file((dir / "by_horizon.csv").string()));
    CHECK(boxplot_csv(rows) == read_file((dir / "boxplot_data.csv").string()));

    // mean gap of T=2 by hand
    double sum = 0;
    int n = 0;
    for (const auto& r : reloaded)
      if (r.horizon == 2) {
        sum += gap_percent(r.opt, r.lb);
        ++n;
      }
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].horizon == 2);
    CHECK(rows[0].instances == n);
    CHECK(rows[0].mean_gap == doctest::Approx(sum / n));
  }

  SUBCASE("one record gives one data row") {
    const auto one_dir = scratch_dir("one");
    emit_reports(std::vector<RunRecord>{records[0]}, one_dir.string());
    const auto text = read_file((one_dir / "raw.csv").string());
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  }

  CHECK_THROWS_AS(emit_reports(std::vector<RunRecord>{}, dir.string()), Error);
  CHECK_THROWS_AS(parse_raw_csv("wrong,header\n"), Error);
}
