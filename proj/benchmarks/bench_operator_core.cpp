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

#include "qdh/bipartite_operator.hpp"
#include "qdh/constructions.hpp"
#include "qdh/rng.hpp"

namespace {

using namespace qdh;

BipartiteOperator random_op(int dim_a, int dim_b, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int n = dim_a * dim_b;
  Matrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      g(r, c) = Complex(2.0 * rng.next_double() - 1.0,
                        2.0 * rng.next_double() - 1.0);
    }
  }
  return BipartiteOperator(dim_a, dim_b, 0.5 * (g + g.adjoint()));
}

void BM_Kron(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BipartiteOperator a = random_op(d, d, 1);
  const BipartiteOperator b = random_op(d, d, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kron(a, b, 1 << 20));
  }
  state.SetComplexityN(d * d);
}
BENCHMARK(BM_Kron)->Arg(2)->Arg(3)->Arg(5)->Complexity();

void BM_PartialTranspose(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BipartiteOperator a = random_op(d, d, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_transpose(a));
  }
}
BENCHMARK(BM_PartialTranspose)->Arg(3)->Arg(5)->Arg(9);

void BM_PartialTransposeFolded(benchmark::State& state) {
  const int copies = static_cast<int>(state.range(0));
  const BipartiteOperator base = random_op(3, 3, 4);
  const BipartiteOperator folded = kron_power(base, copies, 1 << 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_transpose(folded));
  }
}
BENCHMARK(BM_PartialTransposeFolded)->Arg(2)->Arg(3);

void BM_EigHermitian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BipartiteOperator a = random_op(d, d, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_hermitian(a));
  }
}
BENCHMARK(BM_EigHermitian)->Arg(3)->Arg(5)->Arg(9);

void BM_TraceNormFolded(benchmark::State& state) {
  const int copies = static_cast<int>(state.range(0));
  const BipartiteOperator base = random_op(3, 3, 6);
  const BipartiteOperator folded = kron_power(base, copies, 1 << 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_norm(folded));
  }
}
BENCHMARK(BM_TraceNormFolded)->Arg(1)->Arg(2);

void BM_ExampledEnsemble(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exampled_ensemble(d));
  }
}
BENCHMARK(BM_ExampledEnsemble)->Arg(3)->Arg(5)->Arg(7)->Arg(9);

}  // namespace
