/* Copyright 2026 The tempmem Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference vs OpenMP Monte Carlo kernels.
//
//   ./bench_kernels --benchmark_filter=MonteCarlo

#include <benchmark/benchmark.h>

#include "tempmem/variability.hpp"

using namespace tempmem;

namespace {

TrialScenario scenario(CapturePath path) {
  TrialScenario scn;
  scn.roundtrip.path = path;
  return scn;
}

const VariationSpec kSpec{0.01, 0.042, 1};

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto scn = scenario(static_cast<CapturePath>(state.range(1)));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_trials_serial(scn, kSpec, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto scn = scenario(static_cast<CapturePath>(state.range(1)));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_trials_parallel(scn, kSpec, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Recall(benchmark::State& state) {
  ArrayConfig cfg;
  cfg.rows = static_cast<std::size_t>(state.range(0));
  ArrayState s(cfg, DeviceParams{});
  for (auto _ : state) benchmark::DoNotOptimize(recall(s, cfg, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// args: trials, path (0 native, 1 digital)
BENCHMARK(BM_MonteCarloSerial)->Args({1000, 0})->Args({100, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Args({1000, 0})->Args({100, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Recall)->Arg(8)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
