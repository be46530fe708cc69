#include "mvrpb/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mvrpb {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::InvalidClient: return "InvalidClient";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MissingSection: return "MissingSection";
    case Errc::NonIntegerField: return "NonIntegerField";
    case Errc::DepotDemandNonzero: return "DepotDemandNonzero";
    case Errc::TooFewClients: return "TooFewClients";
    case Errc::InvalidHorizon: return "InvalidHorizon";
    case Errc::InvalidPlan: return "InvalidPlan";
    case Errc::InfeasibleClient: return "InfeasibleClient";
    case Errc::TooLarge: return "TooLarge";
    case Errc::Timeout: return "Timeout";
    case Errc::InsufficientDrivers: return "InsufficientDrivers";
    case Errc::DegenerateBound: return "DegenerateBound";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error Error::with_period(int period) const {
  Error e(code_, "period " + std::to_string(period) + ": " + what());
  e.period_ = period;
  e.stage_ = stage_;
  return e;
}

Error Error::with_stage(std::string stage) const {
  Error e(code_, stage + ": " + what());
  e.period_ = period_;
  e.stage_ = std::move(stage);
  return e;
}

void check_base(const CvrpBase& base) {
  if (base.coords.size() < 2) throw Error(Errc::InvalidArgument, "base needs a depot and at least one client");
  if (base.demand.size() != base.coords.size())
    throw Error(Errc::InvalidArgument, "demand and coordinate counts differ");
  if (base.capacity <= 0) throw Error(Errc::InvalidArgument, "capacity must be positive");
  if (base.demand[0] != 0) throw Error(Errc::DepotDemandNonzero, "depot demand must be zero");
  for (std::size_t i = 1; i < base.demand.size(); ++i) {
    if (base.demand[i] < 0) throw Error(Errc::InvalidArgument, "negative demand at node " + std::to_string(i));
    if (base.demand[i] > base.capacity)
      throw Error(Errc::InfeasibleClient, "demand of node " + std::to_string(i) + " exceeds capacity");
  }
}

void check_instance(const MvrpbInstance& inst) {
  check_base(inst.base);
  if (inst.periods.empty()) throw Error(Errc::InvalidHorizon, "instance has no periods");
  if (inst.drivers && *inst.drivers < 1) throw Error(Errc::InvalidArgument, "driver count must be positive");
  const int n = inst.base.size();
  for (int t = 0; t < inst.horizon(); ++t) {
    const auto& p = inst.periods[t];
    if (p.clients.size() != p.demands.size())
      throw Error(Errc::InvalidArgument, "period " + std::to_string(t) + ": client/demand length mismatch");
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < p.clients.size(); ++i) {
      const int c = p.clients[i];
      if (c < 1 || c >= n)
        throw Error(Errc::InvalidClient, "period " + std::to_string(t) + ": client " + std::to_string(c) + " not in base");
      if (seen[c]) throw Error(Errc::InvalidArgument, "period " + std::to_string(t) + ": duplicate client " + std::to_string(c));
      seen[c] = 1;
      if (p.demands[i] < 0 || p.demands[i] > inst.base.capacity)
        throw Error(Errc::InfeasibleClient,
                    "period " + std::to_string(t) + ": demand of client " + std::to_string(c) + " out of range");
    }
  }
}

Dist rounded_euclidean(Point a, Point b) {
  const std::int64_t dx = a.x - b.x;
  const std::int64_t dy = a.y - b.y;
  const std::int64_t s = dx * dx + dy * dy;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(s)));
  while (r * r > s) --r;
  while ((r + 1) * (r + 1) <= s) ++r;
  // sqrt(s) >= r + 1/2  <=>  s >= r^2 + r + 1/4  <=>  s > r^2 + r for integer s
  return s > r * r + r ? r + 1 : r;
}

DistanceMatrix build_distance_matrix(std::span<const Point> coords) {
  const int n = static_cast<int>(coords.size());
  DistanceMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.set(i, j, rounded_euclidean(coords[i], coords[j]));
  return m;
}

Dist route_distance(std::span<const int> route, const DistanceMatrix& matrix) {
  if (route.empty()) return 0;
  for (int c : route)
    if (c < 0 || c >= matrix.size()) throw Error(Errc::InvalidClient, "client index " + std::to_string(c) + " out of range");
  Dist d = matrix(0, route.front()) + matrix(route.back(), 0);
  for (std::size_t i = 1; i < route.size(); ++i) d += matrix(route[i - 1], route[i]);
  return d;
}

Dist total_distance(std::span<const PeriodPlan> plans) {
  Dist d = 0;
  for (const auto& p : plans)
    for (const auto& r : p.routes) d += r.distance;
  return d;
}

std::vector<Dist> driver_loads(std::span<const PeriodPlan> plans, const Assignment& asg, int m) {
  std::vector<Dist> loads(m, 0);
  for (std::size_t t = 0; t < plans.size() && t < asg.drivers.size(); ++t)
    for (std::size_t r = 0; r < plans[t].routes.size() && r < asg.drivers[t].size(); ++r) {
      const int k = asg.drivers[t][r];
      if (k >= 0 && k < m) loads[k] += plans[t].routes[r].distance;
    }
  return loads;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::PlanCount: return "PlanCount";
    case ViolationKind::Coverage: return "Coverage";
    case ViolationKind::UnknownClient: return "UnknownClient";
    case ViolationKind::DuplicateVisit: return "DuplicateVisit";
    case ViolationKind::Capacity: return "Capacity";
    case ViolationKind::DistanceMismatch: return "DistanceMismatch";
    case ViolationKind::LoadMismatch: return "LoadMismatch";
    case ViolationKind::TotalMismatch: return "TotalMismatch";
    case ViolationKind::EmptyRoute: return "EmptyRoute";
    case ViolationKind::AssignmentShape: return "AssignmentShape";
    case ViolationKind::DriverRange: return "DriverRange";
    case ViolationKind::DriverConflict: return "DriverConflict";
  }
  return "Unknown";
}

namespace {

Violation make(ViolationKind kind, int period, std::string msg) {
  Violation v{kind};
  v.period = period;
  v.message = std::move(msg);
  return v;
}

}  // namespace

ValidityReport validate_period(const MvrpbInstance& inst, const DistanceMatrix& matrix, int t,
                               const PeriodPlan& plan) {
  ValidityReport out;
  const auto& pd = inst.periods.at(t);
  const int n = inst.base.size();
  // demand_of[c] = period demand, -1 when c is not requested in this period
  std::vector<std::int64_t> demand_of(n, -1);
  for (std::size_t i = 0; i < pd.clients.size(); ++i) demand_of[pd.clients[i]] = pd.demands[i];
  std::vector<int> visits(n, 0);

  Dist total = 0;
  for (int r = 0; r < plan.route_count(); ++r) {
    const Route& route = plan.routes[r];
    total += route.distance;
    if (route.clients.empty()) {
      auto v = make(ViolationKind::EmptyRoute, t, "empty route");
      v.route = r;
      out.push_back(v);
    }
    std::int64_t load = 0;
    bool indices_ok = true;
    for (int c : route.clients) {
      if (c < 1 || c >= n || demand_of[c] < 0) {
        auto v = make(ViolationKind::UnknownClient, t, "client " + std::to_string(c) + " not requested in period");
        v.route = r;
        v.client = c;
        out.push_back(v);
        if (c < 1 || c >= n) indices_ok = false;
        continue;
      }
      if (++visits[c] == 2) {
        auto v = make(ViolationKind::DuplicateVisit, t, "client " + std::to_string(c) + " visited more than once");
        v.route = r;
        v.client = c;
        out.push_back(v);
      }
      load += demand_of[c];
    }
    if (load > inst.base.capacity) {
      auto v = make(ViolationKind::Capacity, t,
                    "load " + std::to_string(load) + " exceeds capacity " + std::to_string(inst.base.capacity));
      v.route = r;
      out.push_back(v);
    }
    if (load != route.load) {
      auto v = make(ViolationKind::LoadMismatch, t, "stored load " + std::to_string(route.load) + " != " + std::to_string(load));
      v.route = r;
      out.push_back(v);
    }
    if (indices_ok) {
      const Dist d = route_distance(route.clients, matrix);
      if (d != route.distance) {
        auto v = make(ViolationKind::DistanceMismatch, t,
                      "stored distance " + std::to_string(route.distance) + " != " + std::to_string(d));
        v.route = r;
        out.push_back(v);
      }
    }
  }
  for (int c : pd.clients)
    if (visits[c] == 0) {
      auto v = make(ViolationKind::Coverage, t, "client " + std::to_string(c) + " not served");
      v.client = c;
      out.push_back(v);
    }
  if (total != plan.total_distance)
    out.push_back(make(ViolationKind::TotalMismatch, t,
                       "stored total " + std::to_string(plan.total_distance) + " != " + std::to_string(total)));
  return out;
}

ValidityReport validate_assignment(std::span<const PeriodPlan> plans, const Assignment& asg, int m) {
  ValidityReport out;
  if (asg.drivers.size() != plans.size()) {
    out.push_back(make(ViolationKind::AssignmentShape, -1,
                       "assignment covers " + std::to_string(asg.drivers.size()) + " periods, plans have " +
                           std::to_string(plans.size())));
    return out;
  }
  for (int t = 0; t < static_cast<int>(plans.size()); ++t) {
    const auto& row = asg.drivers[t];
    if (static_cast<int>(row.size()) != plans[t].route_count()) {
      out.push_back(make(ViolationKind::AssignmentShape, t, "route count mismatch in assignment"));
      continue;
    }
    for (int r = 0; r < static_cast<int>(row.size()); ++r) {
      const int k = row[r];
      if (k < 0 || (m > 0 && k >= m)) {
        auto v = make(ViolationKind::DriverRange, t, "driver " + std::to_string(k) + " out of range");
        v.route = r;
        v.driver = k;
        out.push_back(v);
        continue;
      }
      for (int q = 0; q < r; ++q)
        if (row[q] == k) {
          auto v = make(ViolationKind::DriverConflict, t,
                        "driver " + std::to_string(k) + " gets routes " + std::to_string(q) + " and " + std::to_string(r));
          v.route = r;
          v.driver = k;
          out.push_back(v);
          break;
        }
    }
  }
  return out;
}

ValidityReport validate_solution(const MvrpbInstance& inst, const DistanceMatrix& matrix,
                                 std::span<const PeriodPlan> plans, const Assignment& asg) {
  ValidityReport out;
  if (static_cast<int>(plans.size()) != inst.horizon()) {
    out.push_back(make(ViolationKind::PlanCount, -1,
                       std::to_string(plans.size()) + " plans for " + std::to_string(inst.horizon()) + " periods"));
    return out;
  }
  for (int t = 0; t < inst.horizon(); ++t) {
    auto part = validate_period(inst, matrix, t, plans[t]);
    out.insert(out.end(), part.begin(), part.end());
  }
  auto part = validate_assignment(plans, asg, inst.drivers.value_or(0));
  out.insert(out.end(), part.begin(), part.end());
  return out;
}

ValidityReport validate_solution(const MvrpbInstance& inst, std::span<const PeriodPlan> plans,
                                 const Assignment& asg) {
  return validate_solution(inst, build_distance_matrix(inst.base.coords), plans, asg);
}

}  // namespace mvrpb
