#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mvrpb/model.hpp"

namespace mvrpb {

// Phase 2: allocate the fixed routes of every period to m drivers so that the
// largest total distance of a driver (its workload) is minimal. A driver
// operates at most one route per period; every route gets exactly one driver.

/// Plans carrying only route distances, for allocation-only inputs.
std::vector<PeriodPlan> plans_from_distances(const std::vector<std::vector<Dist>>& distances);

/// ceil(total distance / m). Throws InsufficientDrivers when some period has more routes than m.
Dist workload_lower_bound(std::span<const PeriodPlan> plans, int m);

/// Longest route first onto the least-loaded driver that is still free in the
/// route's period. Returns the assignment and its largest workload.
std::pair<Assignment, Dist> construct_initial(std::span<const PeriodPlan> plans, int m);

enum class Verdict { Feasible, Infeasible, Unknown };

const char* to_string(Verdict v);

struct SearchLimits {
  // DFS nodes per feasibility probe; 0 means unlimited.
  std::int64_t node_limit = 50'000'000;
  // Wall-clock seconds per probe; 0 disables.
  double time_limit = 0.0;
};

struct FeasibilityOutcome {
  Verdict verdict = Verdict::Unknown;
  std::optional<Assignment> witness;
  std::int64_t nodes = 0;

  bool feasible() const { return verdict == Verdict::Feasible; }
};

/// Decides whether an assignment with every workload <= cap exists.
///
/// Depth-first search over the period-indexed route graph: periods in input
/// order, routes of a period by decreasing distance, each route tried on the
/// free drivers in increasing-load order. Pruned by the cap, by a total-slack
/// bound, by skipping drivers interchangeable with a lower-indexed one, and by
/// memoizing failed (period, sorted loads) states. Returns Unknown only when
/// the limits are exhausted.
FeasibilityOutcome feasible(std::span<const PeriodPlan> plans, int m, Dist cap, const SearchLimits& limits = {});

struct Probe {
  Dist cap = 0;
  Verdict verdict = Verdict::Unknown;
  std::int64_t nodes = 0;
};

enum class BalanceStatus { Optimal, Bracket };

struct BalanceResult {
  Dist lb = 0;
  Dist ub = 0;
  // Optimal workload, or the best feasible one found when status is Bracket.
  Dist opt = 0;
  // Number of feasibility probes solved.
  int iterations = 0;
  Assignment assignment;
  std::vector<Dist> loads;
  BalanceStatus status = BalanceStatus::Optimal;
  // Optimum lies in [bracket_lo, bracket_hi]; equal to opt when Optimal.
  Dist bracket_lo = 0;
  Dist bracket_hi = 0;
  std::vector<Probe> probes;
  double seconds = 0.0;
};

/// Probes the lower bound first; if it is infeasible, bisects (lb, ub] where ub
/// comes from construct_initial, keeping the low end infeasible and the high
/// end feasible. ub is always reported.
BalanceResult optimize_balance(std::span<const PeriodPlan> plans, int m, const SearchLimits& limits = {});

/// 100 * (opt - lb) / lb. Throws DegenerateBound when lb < 1.
double gap_percent(Dist opt, Dist lb);

/// Fixed two-decimal rendering used in reports.
std::string format_fixed(double value, int decimals = 2);

}  // namespace mvrpb
