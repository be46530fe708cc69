#include <benchmark/benchmark.h>

#include "mvrpb/cvrp.hpp"
#include "mvrpb/instance.hpp"

using namespace mvrpb;

namespace {

struct Fixture {
  MvrpbInstance inst;
  DistanceMatrix matrix;
  explicit Fixture(int k)
      : inst(generate_mvrpb(synthesize_base("bench", 60, 100, 24, 100, 7), 1, k, 3)),
        matrix(build_distance_matrix(inst.base.coords)) {}
};

void BM_ExactSmall(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  const auto problem = period_problem(f.inst, f.matrix, 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact_small(problem).total_distance);
}
BENCHMARK(BM_ExactSmall)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Heuristic(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  const auto problem = period_problem(f.inst, f.matrix, 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_heuristic(problem, SolveBudget{}, 1).total_distance);
}
BENCHMARK(BM_Heuristic)->Arg(12)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
