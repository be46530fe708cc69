#pragma once

#include <cstdint>
#include <vector>

#include "mvrpb/model.hpp"
#include "mvrpb/rng.hpp"

namespace mvrpb::testing {

// Random single-base instance with `periods` periods of `clients` clients each
// (all base clients requested). Capacity is picked so that a few routes are needed.
inline MvrpbInstance random_instance(Rng& rng, int clients, int periods = 1, std::int64_t grid = 100,
                                     double routes_wanted = 2.5) {
  MvrpbInstance inst;
  inst.base.name = "rand";
  inst.base.coords.push_back({uniform_int(rng, 0, grid), uniform_int(rng, 0, grid)});
  inst.base.demand.push_back(0);
  std::int64_t sum = 0, biggest = 0;
  for (int i = 0; i < clients; ++i) {
    inst.base.coords.push_back({uniform_int(rng, 0, grid), uniform_int(rng, 0, grid)});
    const auto q = uniform_int(rng, 1, 20);
    inst.base.demand.push_back(q);
    sum += q;
    biggest = std::max(biggest, q);
  }
  inst.base.capacity = std::max<std::int64_t>(biggest, static_cast<std::int64_t>(sum / routes_wanted) + 1);
  for (int t = 0; t < periods; ++t) {
    PeriodDemand pd;
    for (int c = 1; c <= clients; ++c) {
      pd.clients.push_back(c);
      pd.demands.push_back(inst.base.demand[c]);
    }
    inst.periods.push_back(pd);
  }
  return inst;
}

// Random allocation input: per period 1..max_routes route distances in [1, max_dist].
inline std::vector<std::vector<Dist>> random_distances(Rng& rng, int periods, int max_routes, Dist max_dist) {
  std::vector<std::vector<Dist>> d(periods);
  for (auto& p : d) {
    const int r = static_cast<int>(uniform_int(rng, 1, max_routes));
    for (int i = 0; i < r; ++i) p.push_back(uniform_int(rng, 1, max_dist));
  }
  return d;
}

inline int max_routes(const std::vector<std::vector<Dist>>& d) {
  std::size_t m = 0;
  for (const auto& p : d) m = std::max(m, p.size());
  return static_cast<int>(m);
}

}  // namespace mvrpb::testing
