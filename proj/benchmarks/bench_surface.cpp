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
#include "wbal/tripodal.hpp"

namespace wbal {
namespace {

void BM_Side3(benchmark::State& state) {
  const Polyhedron3 p = fixtures::star_mesh(static_cast<int>(state.range(0)), 2 * static_cast<int>(state.range(0)), 5);
  const Point3 q(0.3, -0.2, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(side3(p, q, 1e-9 * p.diameter()));
  state.counters["triangles"] = static_cast<double>(p.triangles().size());
}
BENCHMARK(BM_Side3)->DenseRange(4, 16, 4);

void BM_TripodalSearch(benchmark::State& state) {
  const Polyhedron3 p = fixtures::random_convex_mesh(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(tripodal_search(p));
}
BENCHMARK(BM_TripodalSearch)->Arg(8)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_TripodalStar(benchmark::State& state) {
  const Polyhedron3 p = fixtures::star_mesh(static_cast<int>(state.range(0)), 2 * static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(tripodal_search(p));
}
BENCHMARK(BM_TripodalStar)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TripodalFaceTriples(benchmark::State& state) {
  const Polyhedron3 p = fixtures::random_convex_mesh(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(tripodal_by_face_triples(p));
}
BENCHMARK(BM_TripodalFaceTriples)->Arg(8)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_FourOnEdges(benchmark::State& state) {
  const Polyhedron3 p = fixtures::random_convex_mesh(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(four_on_edges(p));
}
BENCHMARK(BM_FourOnEdges)->Arg(8)->Arg(20)->Arg(50);

}  // namespace
}  // namespace wbal
