#include <random>

#include <benchmark/benchmark.h>

#include "cmaxpp/incorrect_set.hpp"

using namespace cmaxpp;

namespace {

HypersphereSet make_set(int num_spheres, int width) {
  HypersphereSet x(
      4, [width](StateId s) { return std::vector<int>{s % width, s / width}; },
      SphereMetric::kManhattan);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<StateId> cell(0, width * width - 1);
  std::uniform_int_distribution<ActionId> action(0, 3);
  std::uniform_real_distribution<double> radius(0.0, 8.0);
  for (int i = 0; i < num_spheres; ++i)
    x.insert(cell(rng), action(rng), radius(rng));
  return x;
}

// KD-tree-backed membership queries against a sphere collection whose size
// is swept over the range.
void BM_HypersphereContains(benchmark::State& state) {
  const int width = 200;
  const HypersphereSet x = make_set(static_cast<int>(state.range(0)), width);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<StateId> cell(0, width * width - 1);
  std::uniform_int_distribution<ActionId> action(0, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(x.contains(cell(rng), action(rng)));
}

// The same queries through the linear-scan oracle, for comparison.
void BM_HypersphereContainsLinear(benchmark::State& state) {
  const int width = 200;
  const HypersphereSet x = make_set(static_cast<int>(state.range(0)), width);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<StateId> cell(0, width * width - 1);
  std::uniform_int_distribution<ActionId> action(0, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(x.contains_linear(cell(rng), action(rng)));
}

}  // namespace

BENCHMARK(BM_HypersphereContains)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_HypersphereContainsLinear)->Arg(100)->Arg(1000)->Arg(10000);
