#include <algorithm>
#include <chrono>
#include <numeric>

#include "mvrpb/cvrp.hpp"
#include "mvrpb/rng.hpp"

namespace mvrpb {

namespace {

// Routes over local node ids: 0 is the depot, client i of the period is node i + 1.
class LocalSearch {
 public:
  explicit LocalSearch(const PeriodProblem& p) : k_(p.size()), cap_(p.capacity), d_((k_ + 1) * (k_ + 1)), q_(k_ + 1, 0) {
    auto base = [&](int v) { return v == 0 ? 0 : p.clients[v - 1]; };
    for (int a = 0; a <= k_; ++a)
      for (int b = 0; b <= k_; ++b) d_[a * (k_ + 1) + b] = (*p.matrix)(base(a), base(b));
    for (int i = 1; i <= k_; ++i) q_[i] = p.demands[i - 1];
  }

  Dist dist(int a, int b) const { return d_[a * (k_ + 1) + b]; }

  void savings() {
    routes_.clear();
    for (int i = 1; i <= k_; ++i) routes_.push_back({i});
    std::vector<int> owner(k_ + 1);
    std::iota(owner.begin(), owner.end(), -1);
    struct Saving {
      Dist value;
      int i, j;
    };
    std::vector<Saving> list;
    for (int i = 1; i <= k_; ++i)
      for (int j = i + 1; j <= k_; ++j) list.push_back({dist(0, i) + dist(0, j) - dist(i, j), i, j});
    std::stable_sort(list.begin(), list.end(), [](const Saving& a, const Saving& b) { return a.value > b.value; });
    std::vector<std::int64_t> load(k_);
    for (int i = 1; i <= k_; ++i) load[i - 1] = q_[i];
    for (const auto& s : list) {
      if (s.value <= 0) break;
      int ri = owner[s.i], rj = owner[s.j];
      if (ri == rj || load[ri] + load[rj] > cap_) continue;
      auto& a = routes_[ri];
      auto& b = routes_[rj];
      // join so that i and j become adjacent: a ends with i, b starts with j
      if (a.front() == s.i && a.size() > 1) std::reverse(a.begin(), a.end());
      if (b.back() == s.j && b.size() > 1) std::reverse(b.begin(), b.end());
      if (a.back() != s.i || b.front() != s.j) continue;
      a.insert(a.end(), b.begin(), b.end());
      load[ri] += load[rj];
      for (int v : b) owner[v] = ri;
      b.clear();
    }
    std::erase_if(routes_, [](const auto& r) { return r.empty(); });
    refresh();
  }

  void run_to_local_optimum() {
    while (relocate() || swap() || two_opt() || two_opt_star()) {
    }
  }

  // Removes `count` random clients and reinserts them greedily in random order.
  void ruin_recreate(Rng& rng, int count) {
    std::vector<int> all(k_);
    std::iota(all.begin(), all.end(), 1);
    for (int i = 0; i < count; ++i) std::swap(all[i], all[i + uniform_below(rng, k_ - i)]);
    std::vector<char> removed(k_ + 1, 0);
    for (int i = 0; i < count; ++i) removed[all[i]] = 1;
    for (auto& r : routes_) std::erase_if(r, [&](int v) { return removed[v] != 0; });
    std::erase_if(routes_, [](const auto& r) { return r.empty(); });
    refresh();
    for (int i = 0; i < count; ++i) insert_cheapest(all[i]);
  }

  Dist cost() const {
    Dist c = 0;
    for (const auto& r : routes_) c += route_cost(r);
    return c;
  }

  const std::vector<std::vector<int>>& routes() const { return routes_; }
  void set_routes(std::vector<std::vector<int>> r) {
    routes_ = std::move(r);
    refresh();
  }

 private:
  Dist route_cost(const std::vector<int>& r) const {
    if (r.empty()) return 0;
    Dist c = dist(0, r.front()) + dist(r.back(), 0);
    for (std::size_t i = 1; i < r.size(); ++i) c += dist(r[i - 1], r[i]);
    return c;
  }

  void refresh() {
    loads_.assign(routes_.size(), 0);
    for (std::size_t r = 0; r < routes_.size(); ++r)
      for (int v : routes_[r]) loads_[r] += q_[v];
  }

  static int at(const std::vector<int>& r, int pos) {
    return pos < 0 || pos >= static_cast<int>(r.size()) ? 0 : r[pos];
  }

  void insert_cheapest(int u) {
    Dist best = 2 * dist(0, u);
    int best_route = -1, best_pos = 0;
    for (std::size_t r = 0; r < routes_.size(); ++r) {
      if (loads_[r] + q_[u] > cap_) continue;
      const auto& route = routes_[r];
      for (int pos = 0; pos <= static_cast<int>(route.size()); ++pos) {
        const int x = at(route, pos - 1), y = at(route, pos);
        const Dist add = dist(x, u) + dist(u, y) - dist(x, y);
        if (add < best) {
          best = add;
          best_route = static_cast<int>(r);
          best_pos = pos;
        }
      }
    }
    if (best_route < 0) {
      routes_.push_back({u});
      loads_.push_back(q_[u]);
    } else {
      routes_[best_route].insert(routes_[best_route].begin() + best_pos, u);
      loads_[best_route] += q_[u];
    }
  }

  bool relocate() {
    const int nr = static_cast<int>(routes_.size());
    for (int ra = 0; ra < nr; ++ra) {
      for (int pa = 0; pa < static_cast<int>(routes_[ra].size()); ++pa) {
        const auto& a = routes_[ra];
        const int u = a[pa];
        const int p = at(a, pa - 1), n = at(a, pa + 1);
        const Dist gain = dist(p, u) + dist(u, n) - dist(p, n);
        for (int rb = 0; rb < nr; ++rb) {
          if (rb == ra) {
            std::vector<int> reduced = a;
            reduced.erase(reduced.begin() + pa);
            for (int pos = 0; pos <= static_cast<int>(reduced.size()); ++pos) {
              if (pos == pa) continue;
              const int x = at(reduced, pos - 1), y = at(reduced, pos);
              if (dist(x, u) + dist(u, y) - dist(x, y) - gain < 0) {
                reduced.insert(reduced.begin() + pos, u);
                routes_[ra] = std::move(reduced);
                return true;
              }
            }
            continue;
          }
          if (loads_[rb] + q_[u] > cap_) continue;
          const auto& b = routes_[rb];
          for (int pos = 0; pos <= static_cast<int>(b.size()); ++pos) {
            const int x = at(b, pos - 1), y = at(b, pos);
            if (dist(x, u) + dist(u, y) - dist(x, y) - gain < 0) {
              routes_[rb].insert(routes_[rb].begin() + pos, u);
              routes_[ra].erase(routes_[ra].begin() + pa);
              finish_move();
              return true;
            }
          }
        }
        if (a.size() > 1 && 2 * dist(0, u) - gain < 0) {
          routes_[ra].erase(routes_[ra].begin() + pa);
          routes_.push_back({u});
          finish_move();
          return true;
        }
      }
    }
    return false;
  }

  bool swap() {
    const int nr = static_cast<int>(routes_.size());
    for (int ra = 0; ra < nr; ++ra)
      for (int rb = ra + 1; rb < nr; ++rb) {
        auto& a = routes_[ra];
        auto& b = routes_[rb];
        for (int pa = 0; pa < static_cast<int>(a.size()); ++pa)
          for (int pb = 0; pb < static_cast<int>(b.size()); ++pb) {
            const int u = a[pa], v = b[pb];
            if (loads_[ra] - q_[u] + q_[v] > cap_ || loads_[rb] - q_[v] + q_[u] > cap_) continue;
            const int pu = at(a, pa - 1), nu = at(a, pa + 1);
            const int pv = at(b, pb - 1), nv = at(b, pb + 1);
            const Dist delta = dist(pu, v) + dist(v, nu) - dist(pu, u) - dist(u, nu) + dist(pv, u) + dist(u, nv) -
                               dist(pv, v) - dist(v, nv);
            if (delta < 0) {
              std::swap(a[pa], b[pb]);
              finish_move();
              return true;
            }
          }
      }
    return false;
  }

  bool two_opt() {
    for (auto& r : routes_) {
      const int len = static_cast<int>(r.size());
      for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j) {
          const int p = at(r, i - 1), n = at(r, j + 1);
          if (dist(p, r[j]) + dist(r[i], n) - dist(p, r[i]) - dist(r[j], n) < 0) {
            std::reverse(r.begin() + i, r.begin() + j + 1);
            return true;
          }
        }
    }
    return false;
  }

  // Tail exchange between two routes, plus the variant joining head to reversed head.
  bool two_opt_star() {
    const int nr = static_cast<int>(routes_.size());
    for (int ra = 0; ra < nr; ++ra)
      for (int rb = ra + 1; rb < nr; ++rb) {
        const auto& a = routes_[ra];
        const auto& b = routes_[rb];
        const int la = static_cast<int>(a.size()), lb = static_cast<int>(b.size());
        std::int64_t pre_a = 0;
        for (int i = -1; i < la; ++i) {
          if (i >= 0) pre_a += q_[a[i]];
          std::int64_t pre_b = 0;
          for (int j = -1; j < lb; ++j) {
            if (j >= 0) pre_b += q_[b[j]];
            const int ai = at(a, i), an = at(a, i + 1), bj = at(b, j), bn = at(b, j + 1);
            const Dist removed = dist(ai, an) + dist(bj, bn);
            if (pre_a + loads_[rb] - pre_b <= cap_ && pre_b + loads_[ra] - pre_a <= cap_ &&
                dist(ai, bn) + dist(bj, an) - removed < 0) {
              std::vector<int> na(a.begin(), a.begin() + (i + 1));
              na.insert(na.end(), b.begin() + (j + 1), b.end());
              std::vector<int> nb(b.begin(), b.begin() + (j + 1));
              nb.insert(nb.end(), a.begin() + (i + 1), a.end());
              routes_[ra] = std::move(na);
              routes_[rb] = std::move(nb);
              finish_move();
              return true;
            }
            if (pre_a + pre_b <= cap_ && loads_[ra] - pre_a + loads_[rb] - pre_b <= cap_ &&
                dist(ai, bj) + dist(an, bn) - removed < 0) {
              std::vector<int> na(a.begin(), a.begin() + (i + 1));
              na.insert(na.end(), std::make_reverse_iterator(b.begin() + (j + 1)), b.rend());
              std::vector<int> nb(std::make_reverse_iterator(a.end()), std::make_reverse_iterator(a.begin() + (i + 1)));
              nb.insert(nb.end(), b.begin() + (j + 1), b.end());
              routes_[ra] = std::move(na);
              routes_[rb] = std::move(nb);
              finish_move();
              return true;
            }
          }
        }
      }
    return false;
  }

  void finish_move() {
    std::erase_if(routes_, [](const auto& r) { return r.empty(); });
    refresh();
  }

  int k_;
  std::int64_t cap_;
  std::vector<Dist> d_;
  std::vector<std::int64_t> q_;
  std::vector<std::vector<int>> routes_;
  std::vector<std::int64_t> loads_;
};

}  // namespace

PeriodPlan solve_heuristic(const PeriodProblem& period, const SolveBudget& budget, std::uint64_t seed) {
  for (auto q : period.demands)
    if (q > period.capacity) throw Error(Errc::InfeasibleClient, "client demand exceeds capacity");
  const int k = period.size();
  if (k == 0) return canonical_plan({}, false);

  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    return budget.time_limit > 0 &&
           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > budget.time_limit;
  };

  Rng rng(seed);
  LocalSearch ls(period);
  ls.savings();
  ls.run_to_local_optimum();
  auto best = ls.routes();
  Dist best_cost = ls.cost();
  auto current = best;
  Dist current_cost = best_cost;

  const int max_ruin = std::max(2, std::min(k, 2 + k / 5));
  for (int it = 0; it < budget.iterations && k > 1 && !out_of_time(); ++it) {
    ls.set_routes(current);
    ls.ruin_recreate(rng, static_cast<int>(uniform_int(rng, 1, max_ruin)));
    ls.run_to_local_optimum();
    const Dist c = ls.cost();
    // record-to-record acceptance with a threshold shrinking to zero
    const double slack = 0.01 * (1.0 - static_cast<double>(it) / budget.iterations);
    if (c <= static_cast<Dist>(static_cast<double>(best_cost) * (1.0 + slack))) {
      current = ls.routes();
      current_cost = c;
    }
    if (c < best_cost) {
      best = ls.routes();
      best_cost = c;
    }
    if (current_cost > best_cost && it % 50 == 49) {
      current = best;
      current_cost = best_cost;
    }
  }

  std::vector<Route> routes;
  for (const auto& r : best) {
    Route route;
    for (int v : r) {
      route.clients.push_back(period.clients[v - 1]);
      route.load += period.demands[v - 1];
    }
    route.distance = route_distance(route.clients, *period.matrix);
    routes.push_back(std::move(route));
  }
  return canonical_plan(std::move(routes), false);
}

}  // namespace mvrpb
