// Copyright 2026 The wbal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "wbal/balance2d.hpp"
#include "wbal/fixtures.hpp"

namespace wbal {
namespace {

// Args: polygon size n, weight count k.
void BM_BalanceIterative(benchmark::State& state) {
  const Polygon2 poly = fixtures::random_star_polygon(static_cast<int>(state.range(0)), 1);
  const WeightSet w = fixtures::random_feasible_weights(static_cast<int>(state.range(1)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(balance_iterative(poly, w));
}
BENCHMARK(BM_BalanceIterative)->ArgsProduct({{16, 64, 256, 1024}, {2, 8, 32}});

void BM_BalanceFast(benchmark::State& state) {
  const Polygon2 poly = fixtures::random_star_polygon(static_cast<int>(state.range(0)), 1);
  const WeightSet w = fixtures::random_feasible_weights(static_cast<int>(state.range(1)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(balance_fast(poly, w));
}
BENCHMARK(BM_BalanceFast)->ArgsProduct({{16, 64, 256, 1024}, {2, 8, 32}});

void BM_PartitionThree(benchmark::State& state) {
  const WeightSet w = fixtures::random_feasible_weights(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(partition_three(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PartitionThree)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void BM_Antipodal(benchmark::State& state) {
  const Polygon2 poly = fixtures::random_star_polygon(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(antipodal_about(poly, Point2::Zero()));
}
BENCHMARK(BM_Antipodal)->RangeMultiplier(4)->Range(16, 1024);

void BM_GadgetDecide(benchmark::State& state) {
  PartitionInstance inst;
  for (int i = 0; i < state.range(0); ++i) inst.values.push_back(1 + (7 * i) % 19);
  for (auto _ : state) benchmark::DoNotOptimize(gadget_decide(inst));
}
BENCHMARK(BM_GadgetDecide)->DenseRange(4, 12, 4);

}  // namespace
}  // namespace wbal

// The packaged benchmark_main archive carries LTO bytecode from another
// compiler release, so the entry point is defined here.
BENCHMARK_MAIN();
