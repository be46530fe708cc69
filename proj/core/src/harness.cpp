#include "mvrpb/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "mvrpb/instance.hpp"
#include "mvrpb/parallel.hpp"
#include "mvrpb/rng.hpp"

namespace mvrpb {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int clients_per_period(const MvrpbInstance& inst) {
  std::size_t k = 0;
  for (const auto& p : inst.periods) k = std::max(k, p.clients.size());
  return static_cast<int>(k);
}

bool all_proven(std::span<const PeriodPlan> plans) {
  return std::all_of(plans.begin(), plans.end(), [](const PeriodPlan& p) { return p.proven_optimal; });
}

void sort_canonical(std::vector<RunRecord>& records) {
  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.instance, a.horizon) < std::tie(b.instance, b.horizon);
  });
}

}  // namespace

RunRecord balance_record(const std::string& instance_id, std::span<const PeriodPlan> plans, int drivers,
                         const SearchLimits& limits, BalanceResult* result) {
  BalanceResult res = optimize_balance(plans, drivers, limits);
  RunRecord rec;
  rec.instance = instance_id;
  rec.horizon = static_cast<int>(plans.size());
  rec.drivers = drivers;
  rec.total_distance = total_distance(plans);
  rec.lb = res.lb;
  rec.ub = res.ub;
  rec.opt = res.opt;
  rec.iterations = res.iterations;
  rec.gap = rec.lb > 0 ? gap_percent(rec.opt, rec.lb) : 0.0;
  rec.optimal = res.status == BalanceStatus::Optimal;
  rec.routes_proven_optimal = all_proven(plans);
  rec.phase2_seconds = res.seconds;
  if (result) *result = std::move(res);
  return rec;
}

PipelineRun run_pipeline(const MvrpbInstance& inst, const std::string& instance_id, const PipelineOptions& options) {
  PipelineRun run;
  const auto start = std::chrono::steady_clock::now();
  try {
    run.plans = solve_all_periods(inst, options.mode, options.budget, options.seed, options.threads, options.exact_cap);
  } catch (const Error& e) {
    throw e.with_stage("routing");
  }
  const double phase1 = seconds_since(start);
  try {
    const int m = options.drivers ? *options.drivers : inst.drivers ? *inst.drivers : derive_driver_count(run.plans);
    run.record = balance_record(instance_id, run.plans, m, options.limits, &run.balance);
  } catch (const Error& e) {
    throw e.with_stage("balancing");
  }
  run.record.clients_per_period = clients_per_period(inst);
  run.record.clamped_demands = inst.clamped_demands;
  run.record.phase1_seconds = phase1;
  return run;
}

std::vector<RunRecord> run_horizon_study(const CvrpBase& base, const StudyOptions& options) {
  if (options.horizons.empty()) throw Error(Errc::InvalidArgument, "no horizons given");
  if (options.replicates < 1) throw Error(Errc::InvalidArgument, "replicates must be positive");
  for (int h : options.horizons)
    if (h < 1) throw Error(Errc::InvalidHorizon, "horizon " + std::to_string(h) + " is not positive");
  const int master_horizon = *std::max_element(options.horizons.begin(), options.horizons.end());

  std::vector<std::vector<RunRecord>> per_replicate(options.replicates);
  parallel_for(options.replicates, options.pipeline.threads, [&](int r) {
    const std::uint64_t seed = stream_seed(options.seed, static_cast<std::uint64_t>(r));
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "-r%02d", r);
    const std::string id = base.name + suffix;

    MvrpbInstance master = generate_mvrpb(base, master_horizon, options.clients_per_period, seed);
    std::vector<double> period_seconds;
    std::vector<PeriodPlan> plans;
    try {
      plans = solve_all_periods(master, options.pipeline.mode, options.pipeline.budget, seed, 1,
                                options.pipeline.exact_cap, &period_seconds);
    } catch (const Error& e) {
      throw e.with_stage("routing " + id);
    }
    // driver count fixed by the longest horizon, shared by all its prefixes
    const int m = options.pipeline.drivers.value_or(derive_driver_count(plans));
    for (int h : options.horizons) {
      // truncation keeps periods verbatim and plans depend only on period
      // content, so the prefix of the master plans is the truncated solve
      std::span<const PeriodPlan> prefix(plans.data(), static_cast<std::size_t>(h));
      RunRecord rec;
      try {
        rec = balance_record(id, prefix, m, options.pipeline.limits);
      } catch (const Error& e) {
        throw e.with_stage("balancing " + id);
      }
      rec.clients_per_period = options.clients_per_period;
      rec.clamped_demands = master.clamped_demands;
      rec.phase1_seconds = std::accumulate(period_seconds.begin(), period_seconds.begin() + h, 0.0);
      per_replicate[r].push_back(rec);
    }
  });

  std::vector<RunRecord> records;
  for (auto& v : per_replicate) records.insert(records.end(), v.begin(), v.end());
  sort_canonical(records);
  return records;
}

double quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxStats box_stats(std::vector<double> values) {
  BoxStats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q3 = quantile(values, 0.75);
  const double iqr = s.q3 - s.q1;
  const double low_fence = s.q1 - 1.5 * iqr;
  const double high_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = std::max(low_fence, s.min);
  s.whisker_high = std::min(high_fence, s.max);
  for (double v : values)
    if (v < low_fence || v > high_fence) s.outliers.push_back(v);
  return s;
}

std::vector<HorizonRow> aggregate_by_horizon(std::span<const RunRecord> records) {
  std::map<int, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) groups[r.horizon].push_back(&r);
  std::vector<HorizonRow> rows;
  for (const auto& [h, group] : groups) {
    HorizonRow row;
    row.horizon = h;
    row.instances = static_cast<int>(group.size());
    std::vector<double> gaps;
    for (const RunRecord* r : group) {
      row.mean_lb += static_cast<double>(r->lb);
      row.mean_ub += static_cast<double>(r->ub);
      row.mean_opt += static_cast<double>(r->opt);
      row.mean_iterations += r->iterations;
      row.mean_phase1_seconds += r->phase1_seconds;
      row.mean_phase2_seconds += r->phase2_seconds;
      const double g = r->lb > 0 ? gap_percent(r->opt, r->lb) : 0.0;
      row.mean_gap += g;
      gaps.push_back(g);
      row.ub_equals_opt += r->ub == r->opt;
      row.opt_equals_lb += r->opt == r->lb;
    }
    const double n = static_cast<double>(group.size());
    row.mean_lb /= n;
    row.mean_ub /= n;
    row.mean_opt /= n;
    row.mean_iterations /= n;
    row.mean_gap /= n;
    row.mean_phase1_seconds /= n;
    row.mean_phase2_seconds /= n;
    row.gap = box_stats(std::move(gaps));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

constexpr std::string_view kRawHeader =
    "instance,horizon,clients_per_period,drivers,total_distance,lb,ub,opt,iterations,gap_pct,status,"
    "routes_proven_optimal,clamped_demands";

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string f2(double v) { return format_fixed(v, 2); }

}  // namespace

std::string raw_csv(std::span<const RunRecord> records) {
  std::ostringstream out;
  out << kRawHeader << "\n";
  for (const auto& r : records) {
    out << r.instance << ',' << r.horizon << ',' << r.clients_per_period << ',' << r.drivers << ',' << r.total_distance
        << ',' << r.lb << ',' << r.ub << ',' << r.opt << ',' << r.iterations << ',' << f2(r.gap) << ','
        << (r.optimal ? "optimal" : "bracket") << ',' << (r.routes_proven_optimal ? 1 : 0) << ',' << r.clamped_demands
        << "\n";
  }
  return out.str();
}

std::vector<RunRecord> parse_raw_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kRawHeader) throw Error(Errc::Parse, "raw.csv: unexpected header");
  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13) throw Error(Errc::Parse, "raw.csv: expected 13 fields in '" + line + "'");
    try {
      RunRecord r;
      r.instance = f[0];
      r.horizon = std::stoi(f[1]);
      r.clients_per_period = std::stoi(f[2]);
      r.drivers = std::stoi(f[3]);
      r.total_distance = std::stoll(f[4]);
      r.lb = std::stoll(f[5]);
      r.ub = std::stoll(f[6]);
      r.opt = std::stoll(f[7]);
      r.iterations = std::stoi(f[8]);
      // the printed column is rounded; the exact value follows from lb and opt
      r.gap = r.lb > 0 ? gap_percent(r.opt, r.lb) : 0.0;
      if (f2(r.gap) != f[9]) throw Error(Errc::Parse, "raw.csv: gap column disagrees with lb/opt");
      r.optimal = f[10] == "optimal";
      r.routes_proven_optimal = f[11] == "1";
      r.clamped_demands = std::stoi(f[12]);
      records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(Errc::Parse, "raw.csv: bad number in '" + line + "'");
    }
  }
  return records;
}

std::string by_horizon_csv(std::span<const HorizonRow> rows) {
  std::ostringstream out;
  out << "horizon,instances,mean_lb,mean_ub,mean_opt,mean_iterations,mean_gap_pct,gap_min,gap_q1,gap_median,gap_q3,"
         "gap_max,ub_equals_opt,opt_equals_lb\n";
  for (const auto& r : rows)
    out << r.horizon << ',' << r.instances << ',' << f2(r.mean_lb) << ',' << f2(r.mean_ub) << ',' << f2(r.mean_opt)
        << ',' << f2(r.mean_iterations) << ',' << f2(r.mean_gap) << ',' << f2(r.gap.min) << ',' << f2(r.gap.q1) << ','
        << f2(r.gap.median) << ',' << f2(r.gap.q3) << ',' << f2(r.gap.max) << ',' << r.ub_equals_opt << ','
        << r.opt_equals_lb << "\n";
  return out.str();
}

std::string boxplot_csv(std::span<const HorizonRow> rows) {
  std::ostringstream out;
  out << "horizon,whisker_low,q1,median,q3,whisker_high,outliers\n";
  for (const auto& r : rows) {
    out << r.horizon << ',' << f2(r.gap.whisker_low) << ',' << f2(r.gap.q1) << ',' << f2(r.gap.median) << ','
        << f2(r.gap.q3) << ',' << f2(r.gap.whisker_high) << ',';
    for (std::size_t i = 0; i < r.gap.outliers.size(); ++i) out << (i ? ";" : "") << f2(r.gap.outliers[i]);
    out << "\n";
  }
  return out.str();
}

std::string summary_text(std::span<const RunRecord> records, std::span<const HorizonRow> rows) {
  std::ostringstream out;
  char line[256];
  out << "Workload balance by planning horizon (means over instances)\n\n";
  std::snprintf(line, sizeof line, "%4s %5s %12s %12s %12s %7s %9s %9s %9s %9s\n", "T", "#inst", "LB", "UB", "Opt",
                "#It", "T1(s)", "T2(s)", "Gap(%)", "GapMed");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%4d %5d %12.1f %12.1f %12.1f %7.1f %9.2f %9.2f %9.2f %9.2f\n", r.horizon,
                  r.instances, r.mean_lb, r.mean_ub, r.mean_opt, r.mean_iterations, r.mean_phase1_seconds,
                  r.mean_phase2_seconds, r.mean_gap, r.gap.median);
    out << line;
  }
  out << "\nPer instance\n\n";
  std::snprintf(line, sizeof line, "%-24s %4s %4s %10s %10s %10s %4s %8s %9s %9s\n", "instance", "T", "m", "LB", "UB",
                "Opt", "#It", "Gap(%)", "T1(s)", "T2(s)");
  out << line;
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%-24s %4d %4d %10lld %10lld %10lld %4d %8.2f %9.2f %9.2f%s\n", r.instance.c_str(),
                  r.horizon, r.drivers, static_cast<long long>(r.lb), static_cast<long long>(r.ub),
                  static_cast<long long>(r.opt), r.iterations, r.gap, r.phase1_seconds, r.phase2_seconds,
                  r.optimal ? "" : "  (bracket)");
    out << line;
  }
  return out.str();
}

void emit_reports(std::span<const RunRecord> records, const std::string& out_dir) {
  if (records.empty()) throw Error(Errc::InvalidArgument, "no records to report");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + out_dir + ": " + ec.message());
  std::vector<RunRecord> sorted(records.begin(), records.end());
  sort_canonical(sorted);
  const auto rows = aggregate_by_horizon(sorted);
  const std::filesystem::path dir(out_dir);
  write_file((dir / "raw.csv").string(), raw_csv(sorted));
  write_file((dir / "by_horizon.csv").string(), by_horizon_csv(rows));
  write_file((dir / "boxplot_data.csv").string(), boxplot_csv(rows));
  write_file((dir / "summary.txt").string(), summary_text(sorted, rows));
}

}  // namespace mvrpb
