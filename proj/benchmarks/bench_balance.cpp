#include <benchmark/benchmark.h>

#include "mvrpb/balance.hpp"
#include "mvrpb/rng.hpp"

using namespace mvrpb;

namespace {

std::vector<PeriodPlan> random_plans(int periods, int routes, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<Dist>> d(periods);
  for (auto& p : d)
    for (int i = 0, r = static_cast<int>(uniform_int(rng, 2, routes)); i < r; ++i) p.push_back(uniform_int(rng, 50, 1000));
  return plans_from_distances(d);
}

void BM_OptimizeBalance(benchmark::State& state) {
  const auto plans = random_plans(static_cast<int>(state.range(0)), 5, 42);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_balance(plans, 5).opt);
}
BENCHMARK(BM_OptimizeBalance)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ConstructInitial(benchmark::State& state) {
  const auto plans = random_plans(static_cast<int>(state.range(0)), 5, 42);
  for (auto _ : state) benchmark::DoNotOptimize(construct_initial(plans, 5).second);
}
BENCHMARK(BM_ConstructInitial)->Arg(10)->Arg(100);

}  // namespace
