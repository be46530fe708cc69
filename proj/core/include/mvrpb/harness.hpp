#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvrpb/balance.hpp"
#include "mvrpb/cvrp.hpp"
#include "mvrpb/model.hpp"

namespace mvrpb {

struct PipelineOptions {
  SolveMode mode = SolveMode::Heuristic;
  SolveBudget budget;
  std::uint64_t seed = 1;
  int threads = 1;
  // Overrides the instance's driver count; otherwise it is derived from the plans.
  std::optional<int> drivers;
  SearchLimits limits;
  int exact_cap = kExactDefaultCap;
};

/// One (instance, horizon) outcome. Everything except the timings is written to raw.csv.
struct RunRecord {
  std::string instance;
  int horizon = 0;
  int clients_per_period = 0;
  int drivers = 0;
  Dist total_distance = 0;
  Dist lb = 0;
  Dist ub = 0;
  Dist opt = 0;
  int iterations = 0;
  double gap = 0.0;
  bool optimal = true;
  bool routes_proven_optimal = false;
  int clamped_demands = 0;
  double phase1_seconds = 0.0;
  double phase2_seconds = 0.0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct PipelineRun {
  RunRecord record;
  std::vector<PeriodPlan> plans;
  BalanceResult balance;
};

/// Phase 1 over every period, then the balancing phase on the resulting routes.
PipelineRun run_pipeline(const MvrpbInstance& inst, const std::string& instance_id, const PipelineOptions& options);

/// Balancing phase and record assembly for already computed routes.
RunRecord balance_record(const std::string& instance_id, std::span<const PeriodPlan> plans, int drivers,
                         const SearchLimits& limits, BalanceResult* result = nullptr);

struct StudyOptions {
  int clients_per_period = 25;
  std::vector<int> horizons{2, 3, 5, 7, 10};
  int replicates = 10;
  std::uint64_t seed = 1;
  PipelineOptions pipeline;
};

/// Generates `replicates` instances over the longest horizon, fixes the driver
/// count from their routes, and runs the balancing phase on every prefix
/// horizon. Records are sorted by (instance, horizon).
std::vector<RunRecord> run_horizon_study(const CvrpBase& base, const StudyOptions& options);

struct BoxStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double whisker_low = 0, whisker_high = 0;
  std::vector<double> outliers;
};

/// Quantile by linear interpolation between order statistics of sorted data.
double quantile(std::span<const double> sorted, double p);

BoxStats box_stats(std::vector<double> values);

struct HorizonRow {
  int horizon = 0;
  int instances = 0;
  double mean_lb = 0, mean_ub = 0, mean_opt = 0, mean_iterations = 0, mean_gap = 0;
  double mean_phase1_seconds = 0, mean_phase2_seconds = 0;
  int ub_equals_opt = 0;
  int opt_equals_lb = 0;
  BoxStats gap;
};

/// Per-horizon aggregates; gaps are recomputed from the integer lb/opt fields.
std::vector<HorizonRow> aggregate_by_horizon(std::span<const RunRecord> records);

std::string raw_csv(std::span<const RunRecord> records);
std::vector<RunRecord> parse_raw_csv(std::string_view text);
std::string by_horizon_csv(std::span<const HorizonRow> rows);
std::string boxplot_csv(std::span<const HorizonRow> rows);
std::string summary_text(std::span<const RunRecord> records, std::span<const HorizonRow> rows);

/// Writes raw.csv, by_horizon.csv, boxplot_data.csv and summary.txt into out_dir.
void emit_reports(std::span<const RunRecord> records, const std::string& out_dir);

}  // namespace mvrpb
