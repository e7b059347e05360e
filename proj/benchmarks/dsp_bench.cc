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

#include <random>
#include <vector>

#include "soaf/dsp.h"
#include "soaf/stft.h"
#include "soaf/wav.h"

namespace soaf {
namespace {

std::vector<double> Noise(size_t n) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return x;
}

void BM_StftRoundTrip(benchmark::State& state) {
  const std::vector<double> x = Noise(kDefaultSampleRate);
  const StftConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(Istft(Stft(x, cfg)));
}
BENCHMARK(BM_StftRoundTrip)->Unit(benchmark::kMillisecond);

void BM_ConvolveRir(benchmark::State& state) {
  const std::vector<double> src = Noise(kDefaultSampleRate);
  const std::vector<double> rir = Noise(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ConvolveRir(src, rir));
}
BENCHMARK(BM_ConvolveRir)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace soaf
