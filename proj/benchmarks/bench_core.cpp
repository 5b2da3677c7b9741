#include <sgens/constrain.hpp>
#include <sgens/lattice.hpp>
#include <sgens/sgmc.hpp>
#include <sgens/spectra.hpp>

#include <benchmark/benchmark.h>

using namespace sgens;

namespace {

const ModelParams kDoubleWell{0.5, 1.0, QuarticDoubleWell{1.0, 1.5}};

void BM_LowestEigenpairs(benchmark::State& state) {
  const Grid grid = make_grid({-6.0, 6.0, static_cast<std::size_t>(state.range(0))});
  const auto op = assemble_hamiltonian(kDoubleWell, grid);
  for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenpairs(op, 4));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LowestEigenpairs)->RangeMultiplier(2)->Range(500, 8000)->Complexity();

void BM_SolveLambda(benchmark::State& state) {
  const Grid grid = make_grid({});
  const TiltedFamily family(kDoubleWell, grid);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lambda(family, 0.75));
}
BENCHMARK(BM_SolveLambda)->Unit(benchmark::kMillisecond);

void BM_SampleSG(benchmark::State& state) {
  const auto tm = build_truncated_model(kDoubleWell, make_grid({}), static_cast<std::size_t>(state.range(0)));
  ChainConfig cfg;
  cfg.chains = 1;
  cfg.steps = 20000;
  cfg.burn_in = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(sample_sg(tm, 2.0, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.steps + cfg.burn_in));
}
BENCHMARK(BM_SampleSG)->Arg(2)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
