#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mvrpb/balance.hpp"
#include "mvrpb/model.hpp"

namespace mvrpb {

inline constexpr std::string_view kPlansSchema = "mvrpb-plans/1";
inline constexpr std::string_view kBalanceSchema = "mvrpb-balance/1";

// {"schema":"mvrpb-plans/1","periods":[{"proven_optimal":b,"total_distance":d,
//   "routes":[{"clients":[...],"distance":d,"load":q},...]},...]}
std::string serialize_plans(const std::vector<PeriodPlan>& plans);
std::vector<PeriodPlan> parse_plans(std::string_view text);

// Records lb/ub/opt, status, iterations, every probe (cap, verdict, nodes),
// the witness assignment (per period, driver of each route) and driver loads.
std::string serialize_balance(const BalanceResult& result, int drivers);

struct StoredAssignment {
  Assignment assignment;
  int drivers = 0;
};

/// Reads back the witness and driver count of a balance result file.
StoredAssignment parse_balance_assignment(std::string_view text);

}  // namespace mvrpb
