#include <algorithm>
#include <chrono>
#include <limits>

#include "mvrpb/cvrp.hpp"

namespace mvrpb {

namespace {

constexpr Dist kInf = std::numeric_limits<Dist>::max() / 4;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : enabled_(seconds > 0),
        end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(std::min(seconds, 1e7)))) {}

  void tick() {
    if (!enabled_ || ++count_ % 4096 != 0) return;
    if (std::chrono::steady_clock::now() > end_) throw Error(Errc::Timeout, "exact CVRP time limit reached");
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point end_;
  std::uint64_t count_ = 0;
};

}  // namespace

PeriodPlan solve_exact_small(const PeriodProblem& period, int max_clients, double time_limit) {
  const int k = period.size();
  if (k > max_clients || k > 20)
    throw Error(Errc::TooLarge, std::to_string(k) + " clients exceed the exact cap of " + std::to_string(max_clients));
  for (auto q : period.demands)
    if (q > period.capacity) throw Error(Errc::InfeasibleClient, "client demand exceeds capacity");
  if (k == 0) return canonical_plan({}, true);

  const DistanceMatrix& dm = *period.matrix;
  auto node = [&](int i) { return period.clients[i]; };
  const std::uint32_t full = (1u << k) - 1;
  const std::size_t states = std::size_t{1} << k;
  Deadline deadline(time_limit);

  std::vector<std::int64_t> load(states, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int low = __builtin_ctz(s);
    load[s] = load[s & (s - 1)] + period.demands[low];
  }

  // path[s*k + j]: shortest depot -> ... -> j path visiting exactly s, j in s
  std::vector<Dist> path(states * k, kInf);
  std::vector<std::int8_t> parent(states * k, -1);
  std::vector<Dist> tour(states, kInf);
  std::vector<std::int8_t> tour_end(states, -1);
  for (int j = 0; j < k; ++j) path[(std::size_t{1} << j) * k + j] = dm(0, node(j));
  for (std::uint32_t s = 1; s <= full; ++s) {
    if (load[s] > period.capacity) continue;
    for (int j = 0; j < k; ++j) {
      if (!(s >> j & 1)) continue;
      const Dist base = path[std::size_t{s} * k + j];
      if (base >= kInf) continue;
      deadline.tick();
      const Dist closed = base + dm(node(j), 0);
      if (closed < tour[s]) {
        tour[s] = closed;
        tour_end[s] = static_cast<std::int8_t>(j);
      }
      for (int nx = 0; nx < k; ++nx) {
        if (s >> nx & 1) continue;
        const std::uint32_t t = s | (1u << nx);
        if (load[t] > period.capacity) continue;
        const Dist cand = base + dm(node(j), node(nx));
        auto& slot = path[std::size_t{t} * k + nx];
        if (cand < slot) {
          slot = cand;
          parent[std::size_t{t} * k + nx] = static_cast<std::int8_t>(j);
        }
      }
    }
  }

  // cover[s]: cheapest partition of s into feasible routes; the route holding
  // the lowest client of s is enumerated among submasks.
  std::vector<Dist> cover(states, kInf);
  std::vector<std::uint32_t> pick(states, 0);
  cover[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = s & (~s + 1);
    const std::uint32_t rest = s ^ low;
    // submasks of rest, each joined with low
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t r = sub | low;
      deadline.tick();
      if (tour[r] < kInf && cover[s ^ r] < kInf) {
        const Dist c = tour[r] + cover[s ^ r];
        if (c < cover[s]) {
          cover[s] = c;
          pick[s] = r;
        }
      }
      if (sub == 0) break;
    }
  }

  std::vector<Route> routes;
  for (std::uint32_t s = full; s != 0; s ^= pick[s]) {
    std::uint32_t r = pick[s];
    Route route;
    route.load = load[r];
    route.distance = tour[r];
    int j = tour_end[r];
    while (r != 0) {
      route.clients.push_back(node(j));
      const int p = parent[std::size_t{r} * k + j];
      r ^= 1u << j;
      j = p;
    }
    routes.push_back(std::move(route));
  }
  return canonical_plan(std::move(routes), true);
}

}  // namespace mvrpb
