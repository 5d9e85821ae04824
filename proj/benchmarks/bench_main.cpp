#include <benchmark/benchmark.h>

#include <okpp/bifurcation.hpp>
#include <okpp/limit_cycle.hpp>
#include <okpp/model.hpp>
#include <okpp/pde.hpp>

using namespace okpp;

static void BM_Reaction(benchmark::State& state) {
  const ModelParams p;
  StateVec v{1.2, 0.7, 1.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(v);
    benchmark::DoNotOptimize(reaction(v, p));
  }
}
BENCHMARK(BM_Reaction);

static void BM_Jacobian(benchmark::State& state) {
  const ModelParams p;
  StateVec v{1.2, 0.7, 1.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(v);
    benchmark::DoNotOptimize(jacobian(v, p));
  }
}
BENCHMARK(BM_Jacobian);

static void BM_Lyapunov(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bifurcation::first_lyapunov_coefficient());
}
BENCHMARK(BM_Lyapunov);

static void BM_LimitCycle(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cycles::find_limit_cycle(constants::kMuReference).period);
  }
}
BENCHMARK(BM_LimitCycle)->Unit(benchmark::kMillisecond);

// One explicit step on grids of the given node count.
static void BM_PdeStep(benchmark::State& state) {
  pde::SimConfig cfg;
  cfg.grid.halfLength = 0.5 * cfg.grid.dx * static_cast<double>(state.range(0) - 1);
  cfg.workers = static_cast<std::size_t>(state.range(1));
  pde::Field f = pde::initial_field(cfg);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = StateVec{1.0, 0.9, 1.1};
  for (auto _ : state) {
    f = pde::step(f, cfg);
    benchmark::DoNotOptimize(f.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PdeStep)->Args({1601, 1})->Args({8001, 1})->Args({8001, 2})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
