// Copyright 2026 The qdh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qdh/bounds.hpp"
#include "qdh/constructions.hpp"
#include "qdh/hiding_sim.hpp"

namespace {

using namespace qdh;

void BM_MinimizeQExample1(benchmark::State& state) {
  const TwoStateEnsemble e = example1_ensemble();
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_q(e));
  }
}
BENCHMARK(BM_MinimizeQExample1)->Unit(benchmark::kMillisecond);

void BM_PrimalAscentExample1(benchmark::State& state) {
  const TwoStateEnsemble e = example1_ensemble();
  for (auto _ : state) {
    benchmark::DoNotOptimize(primal_ppt_ascent(e));
  }
}
BENCHMARK(BM_PrimalAscentExample1)->Unit(benchmark::kMillisecond);

void BM_ContractionIterate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(lift_contraction_iterate(5.0 / 12.0, 12));
  }
}
BENCHMARK(BM_ContractionIterate);

void BM_BoundSeries(benchmark::State& state) {
  const HidingCertificate hc = validate_hiding(example1_certificate());
  for (auto _ : state) {
    benchmark::DoNotOptimize(bound_series(hc, 12));
  }
}
BENCHMARK(BM_BoundSeries);

void BM_SimulateTrials(benchmark::State& state) {
  const TwoStateEnsemble e = example1_ensemble();
  const AdversaryStrategy strat = AdversaryStrategy::computational(3, 3);
  const std::uint64_t trials = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sim(e, 2, trials, strat, 7, 5.0 / 12.0));
  }
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_SimulateTrials)->Arg(1000)->Arg(10000)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
