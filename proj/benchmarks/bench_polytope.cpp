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

#include "wbal/fixtures.hpp"
#include "wbal/skeleton_balance.hpp"

namespace wbal {
namespace {

void BM_EnumerateVertices(benchmark::State& state) {
  const HPolytope h = fixtures::hypercube(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_vertices(h));
}
BENCHMARK(BM_EnumerateVertices)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);

void BM_EnumerateVerticesBrute(benchmark::State& state) {
  const HPolytope h = fixtures::hypercube(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_vertices_brute(h));
}
BENCHMARK(BM_EnumerateVerticesBrute)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

void BM_HalvingPoint(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const HPolytope h = fixtures::random_hpolytope(d, d + 4, 9);
  for (auto _ : state) benchmark::DoNotOptimize(halving_point(h, 1));
}
BENCHMARK(BM_HalvingPoint)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

void BM_ThreeOnEdges(benchmark::State& state) {
  const HPolytope h = fixtures::random_3polytope(static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(three_on_edges(h));
}
BENCHMARK(BM_ThreeOnEdges)->Arg(8)->Arg(16)->Arg(32);

void BM_ThreeOnEdgesAudit(benchmark::State& state) {
  const HPolytope h = fixtures::random_3polytope(static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(three_on_edges_audit(h));
}
BENCHMARK(BM_ThreeOnEdgesAudit)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Pow2(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const HPolytope h = fixtures::random_hpolytope(d, d + 4, 11);
  const int k = d <= 2 ? 1 : d <= 4 ? 2 : 3;
  for (auto _ : state) benchmark::DoNotOptimize(pow2_points(h, k, 1));
}
BENCHMARK(BM_Pow2)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_ComposeSix(benchmark::State& state) {
  const HPolytope h = product(fixtures::random_3polytope(8, 1), fixtures::random_3polytope(8, 2));
  for (auto _ : state) benchmark::DoNotOptimize(compose_balance(h, 1));
}
BENCHMARK(BM_ComposeSix)->Unit(benchmark::kMillisecond);

void BM_Prop9Check(benchmark::State& state) {
  const HPolytope h = prop9_fixture(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(0)) / 2 - 1;
  for (auto _ : state) benchmark::DoNotOptimize(prop9_check(h, k));
}
BENCHMARK(BM_Prop9Check)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace wbal
