#include <benchmark/benchmark.h>

#include "cmaxpp/agent.hpp"
#include "cmaxpp/envs/grid_nav_ice.hpp"
#include "cmaxpp/envs/lattice.hpp"
#include "cmaxpp/search.hpp"

using namespace cmaxpp;

namespace {

// One lookahead call on a 15x15 gridworld, budget swept over the range.
void BM_LimitedExpansionSearch(benchmark::State& state) {
  const GridNavIce env = GridNavIce::random_obstacles(15, 15, 0.2, 42);
  const Problem& p = env.problem();
  ValueStore v(p);
  QStore q(p.num_actions());
  ExactIncorrectSet x;
  const int budget = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SearchResult r = search(env.start(), p, v, q, x, budget);
    benchmark::DoNotOptimize(r);
  }
}

// A full start-to-goal repetition of CMAX++ on the lattice track, the
// dominant cost in the experiment harness.
void BM_CmaxppLatticeRepetition(benchmark::State& state) {
  LatticeConfig config;
  config.patches = {{8.0, 24.0, 3.0, 2}};
  for (auto _ : state) {
    LatticeWorld env{config};
    TabularAgentOptions opts;
    opts.expansion_budget = 100;
    opts.value_init = ValueInit::kModelOptimal;
    CmaxppAgent agent(env, opts);
    RepetitionRecord rec = run_repetition(agent, 2000);
    benchmark::DoNotOptimize(rec);
  }
}

}  // namespace

BENCHMARK(BM_LimitedExpansionSearch)->Arg(5)->Arg(10)->Arg(50)->Arg(100);
BENCHMARK(BM_CmaxppLatticeRepetition)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
