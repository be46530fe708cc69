#include "mvrpb/balance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "mvrpb/rng.hpp"

namespace mvrpb {

std::vector<PeriodPlan> plans_from_distances(const std::vector<std::vector<Dist>>& distances) {
  std::vector<PeriodPlan> plans;
  for (const auto& period : distances) {
    PeriodPlan p;
    for (Dist d : period) {
      p.routes.push_back(Route{{}, d, 0});
      p.total_distance += d;
    }
    plans.push_back(std::move(p));
  }
  return plans;
}

namespace {

void require_drivers(std::span<const PeriodPlan> plans, int m) {
  if (m < 1) throw Error(Errc::InvalidArgument, "driver count must be positive");
  for (std::size_t t = 0; t < plans.size(); ++t)
    if (plans[t].route_count() > m)
      throw Error(Errc::InsufficientDrivers, "period " + std::to_string(t) + " has " +
                                                 std::to_string(plans[t].route_count()) + " routes for " +
                                                 std::to_string(m) + " drivers");
}

struct LoadsHash {
  std::size_t operator()(const std::vector<Dist>& v) const {
    std::uint64_t h = 0x243F6A8885A308D3ULL;
    for (Dist x : v) h = splitmix64(h ^ static_cast<std::uint64_t>(x));
    return static_cast<std::size_t>(h);
  }
};

class FeasibilitySearch {
 public:
  FeasibilitySearch(std::span<const PeriodPlan> plans, int m, Dist cap, const SearchLimits& limits)
      : plans_(plans), m_(m), cap_(cap), limits_(limits), loads_(m, 0), busy_(m, -1) {
    for (int t = 0; t < static_cast<int>(plans.size()); ++t) {
      std::vector<int> order(plans[t].route_count());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return plans[t].routes[a].distance > plans[t].routes[b].distance;
      });
      for (std::size_t i = 0; i < order.size(); ++i)
        items_.push_back({t, order[i], plans[t].routes[order[i]].distance, i == 0});
    }
    const std::size_t n = items_.size();
    rest_.assign(n + 1, 0);
    rest_min_.assign(n + 1, std::numeric_limits<Dist>::max());
    later_.assign(n + 1, 0);
    // later_[i]: most one driver can pick up in the periods after item i's,
    // i.e. the sum of their longest routes
    for (std::size_t i = n; i-- > 0;) {
      rest_[i] = rest_[i + 1] + items_[i].dist;
      rest_min_[i] = std::min(rest_min_[i + 1], items_[i].dist);
      later_[i] = (i + 1 < n && items_[i + 1].first_of_period) ? items_[i + 1].dist + later_[i + 1] : later_[i + 1];
    }
    build_reach_tables();
    witness_.drivers.resize(plans.size());
    for (std::size_t t = 0; t < plans.size(); ++t) witness_.drivers[t].assign(plans[t].route_count(), -1);
    start_ = std::chrono::steady_clock::now();
  }

  FeasibilityOutcome run() {
    FeasibilityOutcome out;
    try {
      if (dfs(0)) {
        out.verdict = Verdict::Feasible;
        out.witness = witness_;
      } else {
        out.verdict = Verdict::Infeasible;
      }
    } catch (const Exhausted&) {
      out.verdict = Verdict::Unknown;
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  struct Item {
    int period;
    int route;
    Dist dist;
    bool first_of_period;
  };
  struct Exhausted {};

  void count_node() {
    ++nodes_;
    if (limits_.node_limit > 0 && nodes_ > limits_.node_limit) throw Exhausted{};
    if (limits_.time_limit > 0 && (nodes_ & 1023) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > limits_.time_limit)
      throw Exhausted{};
  }

  // fill_[t * (cap + 1) + x]: largest sum <= x made of at most one route from
  // each of the periods t, t+1, ...
  void build_reach_tables() {
    const auto periods = static_cast<std::size_t>(plans_.size());
    const auto width = static_cast<std::size_t>(cap_) + 1;
    if (static_cast<std::uint64_t>(cap_) >= kMaxTableCells || width * (periods + 1) > kMaxTableCells) return;
    fill_.assign(width * (periods + 1), 0);
    std::vector<char> reach(width, 0), next(width, 0);
    reach[0] = 1;
    for (std::size_t t = periods; t-- > 0;) {
      next = reach;
      for (const auto& r : plans_[t].routes) {
        if (r.distance <= 0 || r.distance > cap_) continue;
        const auto d = static_cast<std::size_t>(r.distance);
        for (std::size_t x = d; x < width; ++x)
          if (reach[x - d]) next[x] = 1;
      }
      reach.swap(next);
      Dist best = 0;
      for (std::size_t x = 0; x < width; ++x) {
        if (reach[x]) best = static_cast<Dist>(x);
        fill_[t * width + x] = best;
      }
    }
    period_end_.assign(periods, 0);
    for (std::size_t j = 0; j < items_.size(); ++j) period_end_[items_[j].period] = j + 1;
  }

  // Each driver can absorb at most the largest reachable sum within its slack;
  // together they must cover every remaining route.
  bool slack_suffices(std::size_t i) const {
    Dist usable = 0;
    const Item& item = items_[i];
    const Dist* after = fill_.empty() ? nullptr : &fill_[(item.period + 1) * (static_cast<std::size_t>(cap_) + 1)];
    for (int k = 0; k < m_; ++k) {
      const Dist slack = cap_ - loads_[k];
      if (slack < rest_min_[i]) continue;
      if (!after) {
        usable += std::min(slack, later_[i] + (busy_[k] == item.period ? 0 : item.dist));
        continue;
      }
      Dist best = after[slack];
      if (busy_[k] != item.period)
        for (std::size_t j = i; j < period_end_[item.period] && best < slack; ++j) {
          const Dist d = items_[j].dist;
          if (d <= slack) best = std::max(best, d + after[slack - d]);
        }
      usable += best;
    }
    return usable >= rest_[i];
  }

  std::vector<Dist> state_key(int period) const {
    std::vector<Dist> key(loads_);
    std::sort(key.begin(), key.end());
    key.push_back(period);
    return key;
  }

  bool dfs(std::size_t i) {
    count_node();
    if (i == items_.size()) return true;
    if (!slack_suffices(i)) return false;
    const Item& item = items_[i];

    std::vector<Dist> key;
    if (item.first_of_period) {
      key = state_key(item.period);
      if (failed_.contains(key)) return false;
    }

    // free drivers that fit, one representative per (load) class
    std::vector<int> candidates;
    for (int k = 0; k < m_; ++k) {
      if (busy_[k] == item.period || loads_[k] + item.dist > cap_) continue;
      bool duplicate = false;
      for (int c : candidates)
        if (loads_[c] == loads_[k]) {
          duplicate = true;
          break;
        }
      if (!duplicate) candidates.push_back(k);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) { return loads_[a] < loads_[b]; });

    for (int k : candidates) {
      const int was_busy = busy_[k];
      loads_[k] += item.dist;
      busy_[k] = item.period;
      witness_.drivers[item.period][item.route] = k;
      const bool ok = dfs(i + 1);
      loads_[k] -= item.dist;
      busy_[k] = was_busy;
      if (ok) return true;
    }
    witness_.drivers[item.period][item.route] = -1;
    if (item.first_of_period && failed_.size() < kMemoCap) failed_.insert(std::move(key));
    return false;
  }

  static constexpr std::size_t kMemoCap = 4'000'000;
  static constexpr std::size_t kMaxTableCells = 32'000'000;

  std::span<const PeriodPlan> plans_;
  int m_;
  Dist cap_;
  SearchLimits limits_;
  std::vector<Item> items_;
  std::vector<Dist> rest_, rest_min_, later_;
  std::vector<Dist> fill_;
  std::vector<std::size_t> period_end_;
  std::vector<Dist> loads_;
  std::vector<int> busy_;
  Assignment witness_;
  std::unordered_set<std::vector<Dist>, LoadsHash> failed_;
  std::int64_t nodes_ = 0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

Dist workload_lower_bound(std::span<const PeriodPlan> plans, int m) {
  require_drivers(plans, m);
  const Dist total = total_distance(plans);
  return (total + m - 1) / m;
}

std::pair<Assignment, Dist> construct_initial(std::span<const PeriodPlan> plans, int m) {
  require_drivers(plans, m);
  struct Item {
    int period, route;
    Dist dist;
  };
  std::vector<Item> items;
  for (int t = 0; t < static_cast<int>(plans.size()); ++t)
    for (int r = 0; r < plans[t].route_count(); ++r) items.push_back({t, r, plans[t].routes[r].distance});
  // stable: ties keep (period, route) order
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.dist > b.dist; });

  Assignment asg;
  asg.drivers.resize(plans.size());
  for (std::size_t t = 0; t < plans.size(); ++t) asg.drivers[t].assign(plans[t].route_count(), -1);
  std::vector<Dist> loads(m, 0);
  std::vector<std::vector<char>> busy(plans.size(), std::vector<char>(m, 0));
  for (const auto& it : items) {
    int best = -1;
    for (int k = 0; k < m; ++k)
      if (!busy[it.period][k] && (best < 0 || loads[k] < loads[best])) best = k;
    // m >= routes in the period guarantees a free driver
    busy[it.period][best] = 1;
    loads[best] += it.dist;
    asg.drivers[it.period][it.route] = best;
  }
  const Dist ub = m > 0 ? *std::max_element(loads.begin(), loads.end()) : 0;
  return {std::move(asg), ub};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Infeasible: return "infeasible";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

FeasibilityOutcome feasible(std::span<const PeriodPlan> plans, int m, Dist cap, const SearchLimits& limits) {
  require_drivers(plans, m);
  if (cap < 0) throw Error(Errc::InvalidArgument, "workload cap must be non-negative");
  return FeasibilitySearch(plans, m, cap, limits).run();
}

BalanceResult optimize_balance(std::span<const PeriodPlan> plans, int m, const SearchLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  BalanceResult res;
  res.lb = workload_lower_bound(plans, m);
  auto [initial, ub] = construct_initial(plans, m);
  res.ub = ub;

  auto probe = [&](Dist cap) {
    auto out = feasible(plans, m, cap, limits);
    res.probes.push_back({cap, out.verdict, out.nodes});
    ++res.iterations;
    return out;
  };

  // lo: largest cap known infeasible (lb - 1 always is); hi: smallest known feasible
  Dist lo = res.lb - 1;
  Dist hi = res.ub;
  Assignment best = std::move(initial);
  bool exact = true;

  auto first = probe(res.lb);
  if (first.verdict == Verdict::Feasible) {
    hi = res.lb;
    best = std::move(*first.witness);
  } else if (first.verdict == Verdict::Unknown) {
    exact = false;
  } else {
    lo = res.lb;
    while (hi - lo > 1) {
      const Dist mid = lo + (hi - lo) / 2;
      auto out = probe(mid);
      if (out.verdict == Verdict::Feasible) {
        hi = mid;
        best = std::move(*out.witness);
      } else if (out.verdict == Verdict::Infeasible) {
        lo = mid;
      } else {
        exact = false;
        break;
      }
    }
  }

  res.opt = hi;
  res.assignment = std::move(best);
  res.loads = driver_loads(plans, res.assignment, m);
  res.status = exact ? BalanceStatus::Optimal : BalanceStatus::Bracket;
  res.bracket_lo = exact ? hi : lo + 1;
  res.bracket_hi = hi;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

double gap_percent(Dist opt, Dist lb) {
  if (lb < 1) throw Error(Errc::DegenerateBound, "gap undefined for lower bound " + std::to_string(lb));
  return 100.0 * static_cast<double>(opt - lb) / static_cast<double>(lb);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

}  // namespace mvrpb
