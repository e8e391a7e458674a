#include <benchmark/benchmark.h>

#include <vector>

#include "wnc/coded_control.hpp"
#include "wnc/fast_optimizer.hpp"
#include "wnc/qam.hpp"
#include "wnc/simulation.hpp"
#include "wnc/slow_optimizer.hpp"
#include "wnc/units.hpp"

using namespace wnc;

namespace {

const PlantParams kPlant(1.5, 0.1);

void BM_AllocateSlow(benchmark::State& state) {
  std::vector<SlowLink> links;
  for (int i = 0; i < state.range(0); ++i) links.push_back({i + 1, 0.01 + 0.002 * i});
  const NoisePowers noise(1e-7, dbm_to_watts(30.0));
  for (auto _ : state) benchmark::DoNotOptimize(allocate_multi_slow(links, kPlant, noise));
}
BENCHMARK(BM_AllocateSlow)->Arg(2)->Arg(10)->Arg(100);

void BM_AllocateFast(benchmark::State& state) {
  std::vector<FastLink> links;
  for (int i = 0; i < state.range(0); ++i) links.push_back({i + 1, 1e-4 * (1.0 + i)});
  const NoisePowers noise(1e-7, dbm_to_watts(40.0));
  for (auto _ : state) benchmark::DoNotOptimize(allocate_multi_fast(links, kPlant, noise));
}
BENCHMARK(BM_AllocateFast)->Arg(2)->Arg(10)->Arg(100);

void BM_QamDetect(benchmark::State& state) {
  const QamConstellation c(static_cast<int>(state.range(0)), 1.0);
  Rng rng(1);
  std::vector<Symbol> rx(1024);
  for (auto& s : rx) s = Symbol(rng.normal(), rng.normal());
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(c.detect(rx[i++ & 1023]));
}
BENCHMARK(BM_QamDetect)->Arg(4)->Arg(8);

void BM_SlowLoop(benchmark::State& state) {
  const NoisePowers noise(1e-7, 0.1);
  const auto design = optimize_single_slow(kPlant, noise, 0.01);
  Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_slow_loop(kPlant, noise, design.gains, 0.01, 500, rng));
  }
  state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_SlowLoop);

void BM_CodedLoop(benchmark::State& state) {
  const NoisePowers noise(1e-7, 0.1);
  const CodingScheme scheme(7, 4, 8);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(run_coded_control(kPlant, noise, 0.01, scheme, 500, rng));
  state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_CodedLoop);

}  // namespace

BENCHMARK_MAIN();
