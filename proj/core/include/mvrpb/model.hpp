#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mvrpb {

using Dist = std::int64_t;

enum class Errc {
  InvalidClient,
  InvalidArgument,
  MissingSection,
  NonIntegerField,
  DepotDemandNonzero,
  TooFewClients,
  InvalidHorizon,
  InvalidPlan,
  InfeasibleClient,
  TooLarge,
  Timeout,
  InsufficientDrivers,
  DegenerateBound,
  Parse,
  Io,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

  // Period the error came from, when raised while solving a multi-period input.
  std::optional<int> period() const noexcept { return period_; }
  const std::string& stage() const noexcept { return stage_; }

  Error with_period(int period) const;
  Error with_stage(std::string stage) const;

 private:
  Errc code_;
  std::optional<int> period_;
  std::string stage_;
};

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Single-period CVRP seed instance. Index 0 is the depot.
struct CvrpBase {
  std::string name;
  std::vector<Point> coords;
  std::vector<std::int64_t> demand;
  std::int64_t capacity = 0;

  int size() const { return static_cast<int>(coords.size()); }
  int client_count() const { return size() - 1; }

  friend bool operator==(const CvrpBase&, const CvrpBase&) = default;
};

/// Throws InvalidArgument describing the first broken invariant.
void check_base(const CvrpBase& base);

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  Dist operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, Dist v) {
    d_[static_cast<std::size_t>(i) * n_ + j] = v;
    d_[static_cast<std::size_t>(j) * n_ + i] = v;
  }

 private:
  int n_ = 0;
  std::vector<Dist> d_;
};

/// Euclidean distance rounded half-up to the nearest integer.
Dist rounded_euclidean(Point a, Point b);

DistanceMatrix build_distance_matrix(std::span<const Point> coords);

struct PeriodDemand {
  std::vector<int> clients;
  std::vector<std::int64_t> demands;

  friend bool operator==(const PeriodDemand&, const PeriodDemand&) = default;
};

struct MvrpbInstance {
  CvrpBase base;
  std::vector<PeriodDemand> periods;
  std::optional<int> drivers;
  // Number of generated demands that were clamped to the capacity.
  int clamped_demands = 0;

  int horizon() const { return static_cast<int>(periods.size()); }

  friend bool operator==(const MvrpbInstance&, const MvrpbInstance&) = default;
};

void check_instance(const MvrpbInstance& inst);

struct Route {
  std::vector<int> clients;
  Dist distance = 0;
  std::int64_t load = 0;

  friend bool operator==(const Route&, const Route&) = default;
};

struct PeriodPlan {
  std::vector<Route> routes;
  Dist total_distance = 0;
  bool proven_optimal = false;

  int route_count() const { return static_cast<int>(routes.size()); }

  friend bool operator==(const PeriodPlan&, const PeriodPlan&) = default;
};

/// Route-to-driver mapping: drivers[t][r] is the driver of route r in period t.
struct Assignment {
  std::vector<std::vector<int>> drivers;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Total distance per driver under an assignment.
std::vector<Dist> driver_loads(std::span<const PeriodPlan> plans, const Assignment& asg, int m);

/// depot -> c1 -> ... -> ck -> depot. Throws InvalidClient on a bad index.
Dist route_distance(std::span<const int> route, const DistanceMatrix& matrix);

Dist total_distance(std::span<const PeriodPlan> plans);

enum class ViolationKind {
  PlanCount,
  Coverage,
  UnknownClient,
  DuplicateVisit,
  Capacity,
  DistanceMismatch,
  LoadMismatch,
  TotalMismatch,
  EmptyRoute,
  AssignmentShape,
  DriverRange,
  DriverConflict,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int period = -1;
  int route = -1;
  int client = -1;
  int driver = -1;
  std::string message;
};

using ValidityReport = std::vector<Violation>;

/// Coverage, capacity and stored-field consistency of one period's routes.
ValidityReport validate_period(const MvrpbInstance& inst, const DistanceMatrix& matrix, int period,
                               const PeriodPlan& plan);

/// Per-period driver uniqueness and shape of the assignment. m <= 0 skips the range check.
ValidityReport validate_assignment(std::span<const PeriodPlan> plans, const Assignment& asg, int m);

/// Every violation of a full MVRPB solution; empty means feasible.
ValidityReport validate_solution(const MvrpbInstance& inst, std::span<const PeriodPlan> plans,
                                 const Assignment& asg);
ValidityReport validate_solution(const MvrpbInstance& inst, const DistanceMatrix& matrix,
                                 std::span<const PeriodPlan> plans, const Assignment& asg);

}  // namespace mvrpb
