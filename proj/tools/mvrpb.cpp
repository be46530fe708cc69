// Command line front end: instance generation, per-period routing, workload
// balancing, single pipeline runs and horizon studies.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "mvrpb/balance.hpp"
#include "mvrpb/cvrp.hpp"
#include "mvrpb/harness.hpp"
#include "mvrpb/instance.hpp"
#include "mvrpb/io.hpp"

using namespace mvrpb;

namespace {

SolveMode parse_mode(const std::string& s) { return s == "exact" ? SolveMode::Exact : SolveMode::Heuristic; }

std::vector<int> parse_horizons(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error(Errc::InvalidArgument, "bad horizon list '" + s + "'");
    }
  }
  return out;
}

// Accepts both the benchmark text format and the instance JSON schema for a base.
CvrpBase load_base(const std::string& path) {
  const auto text = read_file(path);
  if (text.find(kInstanceSchema) != std::string::npos) return parse_instance(text).base;
  return parse_cvrp(text);
}

void print_record(const RunRecord& r) {
  std::cout << "instance " << r.instance << "  T=" << r.horizon << "  m=" << r.drivers << "  distance "
            << r.total_distance << "\n"
            << "LB " << r.lb << "  UB " << r.ub << "  Opt " << r.opt << "  #It " << r.iterations << "  Gap "
            << format_fixed(r.gap) << "%" << (r.optimal ? "" : "  (bracket, probe limits hit)") << "\n"
            << "time routing " << format_fixed(r.phase1_seconds) << "s  balancing " << format_fixed(r.phase2_seconds)
            << "s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-period vehicle routing with workload balance"};
  app.require_subcommand(1);

  // synth-base
  auto* synth = app.add_subcommand("synth-base", "Write a random Euclidean CVRP base in the benchmark format");
  std::string synth_name = "synthetic", synth_out;
  int synth_clients = 60;
  std::int64_t synth_capacity = 100, synth_max_demand = 30, synth_grid = 1000;
  std::uint64_t synth_seed = 1;
  synth->add_option("--name", synth_name);
  synth->add_option("--clients", synth_clients)->check(CLI::PositiveNumber);
  synth->add_option("--capacity", synth_capacity)->check(CLI::PositiveNumber);
  synth->add_option("--max-demand", synth_max_demand)->check(CLI::PositiveNumber);
  synth->add_option("--grid", synth_grid)->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed);
  synth->add_option("--out", synth_out)->required();

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a multi-period instance from a CVRP base");
  std::string gen_base, gen_out;
  int gen_periods = 10, gen_k = 0;
  std::uint64_t gen_seed = 1;
  std::optional<int> gen_drivers;
  gen->add_option("--base", gen_base)->required();
  gen->add_option("--periods", gen_periods)->check(CLI::PositiveNumber);
  gen->add_option("--clients-per-period", gen_k)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--drivers", gen_drivers);
  gen->add_option("--out", gen_out)->required();

  // truncate
  auto* trunc = app.add_subcommand("truncate", "Keep the first T periods of an instance");
  std::string trunc_in, trunc_out;
  int trunc_periods = 1;
  trunc->add_option("--instance", trunc_in)->required();
  trunc->add_option("--periods", trunc_periods)->required();
  trunc->add_option("--out", trunc_out)->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Route every period of an instance");
  std::string solve_in, solve_out, solve_mode = "heuristic";
  SolveBudget solve_budget;
  std::uint64_t solve_seed = 1;
  int solve_threads = 1, solve_cap = kExactDefaultCap;
  solve->add_option("--instance", solve_in)->required();
  solve->add_option("--mode", solve_mode)->check(CLI::IsMember({"heuristic", "exact"}));
  solve->add_option("--time-limit", solve_budget.time_limit, "Seconds per period, 0 = none");
  solve->add_option("--iterations", solve_budget.iterations, "Perturbation rounds per period");
  solve->add_option("--exact-cap", solve_cap);
  solve->add_option("--seed", solve_seed);
  solve->add_option("--threads", solve_threads)->check(CLI::PositiveNumber);
  solve->add_option("--out", solve_out)->required();

  // balance
  auto* bal = app.add_subcommand("balance", "Allocate routes to drivers with minimum maximum workload");
  std::string bal_plans, bal_out;
  std::optional<int> bal_drivers;
  SearchLimits bal_limits;
  bal->add_option("--plans", bal_plans)->required();
  bal->add_option("--drivers", bal_drivers, "Defaults to the largest route count of a period");
  bal->add_option("--node-limit", bal_limits.node_limit, "Search nodes per probe, 0 = unlimited");
  bal->add_option("--probe-time-limit", bal_limits.time_limit, "Seconds per probe, 0 = none");
  bal->add_option("--out", bal_out)->required();

  // validate
  auto* val = app.add_subcommand("validate", "Check routes and an allocation against an instance");
  std::string val_inst, val_plans, val_result;
  val->add_option("--instance", val_inst)->required();
  val->add_option("--plans", val_plans)->required();
  val->add_option("--result", val_result)->required();

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Route and balance one instance, write reports");
  std::string pipe_in, pipe_dir, pipe_mode = "heuristic";
  PipelineOptions pipe_opts;
  std::optional<int> pipe_drivers;
  pipe->add_option("--instance", pipe_in)->required();
  pipe->add_option("--mode", pipe_mode)->check(CLI::IsMember({"heuristic", "exact"}));
  pipe->add_option("--time-limit", pipe_opts.budget.time_limit);
  pipe->add_option("--iterations", pipe_opts.budget.iterations);
  pipe->add_option("--seed", pipe_opts.seed);
  pipe->add_option("--threads", pipe_opts.threads)->check(CLI::PositiveNumber);
  pipe->add_option("--drivers", pipe_drivers);
  pipe->add_option("--node-limit", pipe_opts.limits.node_limit);
  pipe->add_option("--out-dir", pipe_dir)->required();

  // study
  auto* study = app.add_subcommand("study", "Equity versus planning horizon experiment");
  std::string study_base, study_dir, study_mode = "heuristic", study_horizons = "2,3,5,7,10";
  StudyOptions study_opts;
  study->add_option("--base", study_base)->required();
  study->add_option("--clients-per-period", study_opts.clients_per_period)->required()->check(CLI::PositiveNumber);
  study->add_option("--horizons", study_horizons);
  study->add_option("--replicates", study_opts.replicates)->check(CLI::PositiveNumber);
  study->add_option("--seed", study_opts.seed);
  study->add_option("--mode", study_mode)->check(CLI::IsMember({"heuristic", "exact"}));
  study->add_option("--time-limit", study_opts.pipeline.budget.time_limit);
  study->add_option("--iterations", study_opts.pipeline.budget.iterations);
  study->add_option("--threads", study_opts.pipeline.threads)->check(CLI::PositiveNumber);
  study->add_option("--node-limit", study_opts.pipeline.limits.node_limit);
  study->add_option("--out-dir", study_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      const auto base = synthesize_base(synth_name, synth_clients, synth_capacity, synth_max_demand, synth_grid, synth_seed);
      write_file(synth_out, write_cvrp(base));
    } else if (*gen) {
      auto inst = generate_mvrpb(load_base(gen_base), gen_periods, gen_k, gen_seed);
      inst.drivers = gen_drivers;
      check_instance(inst);
      write_file(gen_out, serialize_instance(inst));
      if (inst.clamped_demands > 0)
        std::cerr << "note: " << inst.clamped_demands << " demands clamped to capacity " << inst.base.capacity << "\n";
    } else if (*trunc) {
      write_file(trunc_out, serialize_instance(truncate_horizon(parse_instance(read_file(trunc_in)), trunc_periods)));
    } else if (*solve) {
      const auto inst = parse_instance(read_file(solve_in));
      const auto plans = solve_all_periods(inst, parse_mode(solve_mode), solve_budget, solve_seed, solve_threads, solve_cap);
      write_file(solve_out, serialize_plans(plans));
      std::cout << "total distance " << total_distance(plans) << " over " << plans.size() << " periods, max routes "
                << derive_driver_count(plans) << "\n";
    } else if (*bal) {
      const auto plans = parse_plans(read_file(bal_plans));
      const int m = bal_drivers ? *bal_drivers : derive_driver_count(plans);
      const auto res = optimize_balance(plans, m, bal_limits);
      write_file(bal_out, serialize_balance(res, m));
      std::cout << "LB " << res.lb << "  UB " << res.ub << "  Opt " << res.opt << "  #It " << res.iterations;
      if (res.lb > 0) std::cout << "  Gap " << format_fixed(gap_percent(res.opt, res.lb)) << "%";
      if (res.status == BalanceStatus::Bracket)
        std::cout << "  (optimum in [" << res.bracket_lo << ", " << res.bracket_hi << "])";
      std::cout << "\n";
    } else if (*val) {
      auto inst = parse_instance(read_file(val_inst));
      const auto plans = parse_plans(read_file(val_plans));
      const auto stored = parse_balance_assignment(read_file(val_result));
      inst.drivers = stored.drivers;
      const auto report = validate_solution(inst, plans, stored.assignment);
      for (const auto& v : report) std::cout << to_string(v.kind) << ": " << v.message << "\n";
      if (!report.empty()) return 2;
      std::cout << "valid\n";
    } else if (*pipe) {
      const auto inst = parse_instance(read_file(pipe_in));
      pipe_opts.mode = parse_mode(pipe_mode);
      pipe_opts.drivers = pipe_drivers;
      const auto id = std::filesystem::path(pipe_in).stem().string();
      const auto run = run_pipeline(inst, id, pipe_opts);
      emit_reports(std::vector<RunRecord>{run.record}, pipe_dir);
      const std::filesystem::path dir(pipe_dir);
      write_file((dir / "plans.json").string(), serialize_plans(run.plans));
      write_file((dir / "balance.json").string(), serialize_balance(run.balance, run.record.drivers));
      print_record(run.record);
    } else if (*study) {
      study_opts.horizons = parse_horizons(study_horizons);
      study_opts.pipeline.mode = parse_mode(study_mode);
      const auto records = run_horizon_study(load_base(study_base), study_opts);
      emit_reports(records, study_dir);
      std::cout << read_file((std::filesystem::path(study_dir) / "summary.txt").string());
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
