// Copyright 2026 The soaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bench_support.h"
#include "soaf/global_field.h"
#include "soaf/local_field.h"

namespace soaf {
namespace {

void BM_RasterizeField(benchmark::State& state) {
  const SceneLayout s = bench::Fixture("two_room.json");
  FieldParams p = DefaultFieldParams(s);
  p.grid_resolution = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RasterizeField(s, p));
}
BENCHMARK(BM_RasterizeField)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_BinauralFeatures(benchmark::State& state) {
  const SceneLayout s = bench::Fixture("two_room.json");
  const GlobalField field(s, DefaultFieldParams(s));
  LocalFieldConfig cfg;
  cfg.num_directions = static_cast<int>(state.range(0));
  const SphereDirections dirs = FibonacciDirections(cfg.num_directions);
  const Pose pose{{4.0, 1.0, 1.5}, {1.0, 0.0, 0.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeBinauralFeatures(pose, field, dirs, cfg));
  }
}
BENCHMARK(BM_BinauralFeatures)
    ->Arg(256)
    ->Arg(1024)
    ->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace soaf
