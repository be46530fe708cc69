#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvrpb/model.hpp"

namespace mvrpb {

/// One period of an instance: the clients to serve, their demands, and the
/// shared distance matrix of the base.
struct PeriodProblem {
  const DistanceMatrix* matrix = nullptr;
  std::span<const int> clients;
  std::span<const std::int64_t> demands;
  std::int64_t capacity = 0;

  int size() const { return static_cast<int>(clients.size()); }
};

PeriodProblem period_problem(const MvrpbInstance& inst, const DistanceMatrix& matrix, int period);

struct SolveBudget {
  // Perturbation rounds of the heuristic after the first local optimum.
  int iterations = 300;
  // Wall-clock cap in seconds; 0 disables it. A cap makes results depend on machine speed.
  double time_limit = 0.0;
};

/// Savings construction followed by iterated local search (relocate, swap,
/// intra-route 2-opt, 2-opt*) with ruin-and-recreate perturbations.
PeriodPlan solve_heuristic(const PeriodProblem& period, const SolveBudget& budget, std::uint64_t seed);

inline constexpr int kExactDefaultCap = 12;

/// Proven-optimal routes: Held-Karp tour costs for every capacity-feasible
/// client subset, then a set-partition DP over the client bitmask.
/// Throws TooLarge above max_clients and Timeout when the time limit elapses.
PeriodPlan solve_exact_small(const PeriodProblem& period, int max_clients = kExactDefaultCap, double time_limit = 0.0);

enum class SolveMode { Heuristic, Exact };

/// Seed used for one period: derived from the master seed and the period's
/// content, so reordering periods does not change any plan.
std::uint64_t period_seed(std::uint64_t master, std::span<const int> clients, std::span<const std::int64_t> demands);

/// One plan per period, computed on up to `threads` workers. Output does not
/// depend on the thread count. Errors carry the failing period index.
/// Wall-clock seconds per period go to `period_seconds` when given.
std::vector<PeriodPlan> solve_all_periods(const MvrpbInstance& inst, SolveMode mode, const SolveBudget& budget,
                                          std::uint64_t seed, int threads = 1, int exact_cap = kExactDefaultCap,
                                          std::vector<double>* period_seconds = nullptr);

/// Orients each route so that its first client is not larger than its last,
/// sorts routes by first client and fills totals.
PeriodPlan canonical_plan(std::vector<Route> routes, bool proven_optimal);

}  // namespace mvrpb
