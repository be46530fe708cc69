#include <algorithm>
#include <chrono>

#include "mvrpb/cvrp.hpp"
#include "mvrpb/parallel.hpp"
#include "mvrpb/rng.hpp"

namespace mvrpb {

PeriodProblem period_problem(const MvrpbInstance& inst, const DistanceMatrix& matrix, int period) {
  const auto& pd = inst.periods.at(period);
  return PeriodProblem{&matrix, pd.clients, pd.demands, inst.base.capacity};
}

std::uint64_t period_seed(std::uint64_t master, std::span<const int> clients, std::span<const std::int64_t> demands) {
  std::uint64_t h = splitmix64(master);
  for (std::size_t i = 0; i < clients.size(); ++i) {
    h = splitmix64(h ^ static_cast<std::uint64_t>(clients[i]));
    h = splitmix64(h ^ static_cast<std::uint64_t>(demands[i]));
  }
  return h;
}

std::vector<PeriodPlan> solve_all_periods(const MvrpbInstance& inst, SolveMode mode, const SolveBudget& budget,
                                          std::uint64_t seed, int threads, int exact_cap,
                                          std::vector<double>* period_seconds) {
  check_instance(inst);
  const DistanceMatrix matrix = build_distance_matrix(inst.base.coords);
  if (mode == SolveMode::Exact)
    for (int t = 0; t < inst.horizon(); ++t)
      if (static_cast<int>(inst.periods[t].clients.size()) > exact_cap)
        throw Error(Errc::TooLarge, "period exceeds the exact cap").with_period(t);

  std::vector<PeriodPlan> plans(inst.horizon());
  std::vector<double> seconds(inst.horizon(), 0.0);
  parallel_for(inst.horizon(), threads, [&](int t) {
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto problem = period_problem(inst, matrix, t);
      if (mode == SolveMode::Exact) {
        plans[t] = solve_exact_small(problem, exact_cap, budget.time_limit);
      } else {
        plans[t] = solve_heuristic(problem, budget, period_seed(seed, problem.clients, problem.demands));
      }
    } catch (const Error& e) {
      throw e.with_period(t);
    }
    seconds[t] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  if (period_seconds) *period_seconds = std::move(seconds);
  return plans;
}

PeriodPlan canonical_plan(std::vector<Route> routes, bool proven_optimal) {
  for (auto& r : routes)
    if (!r.clients.empty() && r.clients.front() > r.clients.back()) std::reverse(r.clients.begin(), r.clients.end());
  std::sort(routes.begin(), routes.end(), [](const Route& a, const Route& b) { return a.clients < b.clients; });
  PeriodPlan plan;
  plan.routes = std::move(routes);
  plan.proven_optimal = proven_optimal;
  for (const auto& r : plan.routes) plan.total_distance += r.distance;
  return plan;
}

}  // namespace mvrpb
