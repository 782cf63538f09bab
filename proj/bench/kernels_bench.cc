// Copyright 2026 The jndpf Authors. All Rights Reserved.
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

#include <random>

#include "jndpf/injection.h"
#include "jndpf/jnd_model.h"
#include "jndpf/parallel.h"
#include "jndpf/reference.h"
#include "jndpf/ssim.h"
#include "jndpf/transform.h"

namespace jndpf {
namespace {

ImagePlane NoiseImage(size_t w, size_t h) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(0, 255);
  ImagePlane p(w, h);
  // Smooth ramps plus noise give a mix of block classes.
  for (size_t y = 0; y < h; ++y) {
    for (size_t x = 0; x < w; ++x) {
      p.at(x, y) = static_cast<uint8_t>(((x + y) / 4 + d(rng) / 4) % 256);
    }
  }
  return p;
}

const ImagePlane& Image() {
  static const ImagePlane img = NoiseImage(1024, 768);
  return img;
}

// range(0): threads for the parallel kernels.
void SetThreads(benchmark::State& state) {
  SetThreadCount(static_cast<int>(state.range(0)));
}

void BM_DctGridSerial(benchmark::State& state) {
  const FloatPlane x = ToFloat(Image());
  for (auto _ : state) benchmark::DoNotOptimize(reference::ForwardDctGrid(x));
}
BENCHMARK(BM_DctGridSerial)->Unit(benchmark::kMillisecond);

void BM_DctGridParallel(benchmark::State& state) {
  SetThreads(state);
  const FloatPlane x = ToFloat(Image());
  for (auto _ : state) benchmark::DoNotOptimize(ForwardDctGrid(x));
}
BENCHMARK(BM_DctGridParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_JndMapSerial(benchmark::State& state) {
  const BlockGrid grid = ForwardDctGrid(ToFloat(Image()));
  const JndParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::ComputeJndMap(grid, params));
  }
}
BENCHMARK(BM_JndMapSerial)->Unit(benchmark::kMillisecond);

void BM_JndMapParallel(benchmark::State& state) {
  SetThreads(state);
  const BlockGrid grid = ForwardDctGrid(ToFloat(Image()));
  const JndParams params;
  for (auto _ : state) benchmark::DoNotOptimize(ComputeJndMap(grid, params));
}
BENCHMARK(BM_JndMapParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PrefilterSerial(benchmark::State& state) {
  const JndParams params;
  InjectionConfig cfg;
  cfg.strategy = static_cast<InjectionStrategy>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::Prefilter(Image(), params, cfg));
  }
  state.SetLabel(std::string(StrategyName(cfg.strategy)));
}
BENCHMARK(BM_PrefilterSerial)
    ->Arg(static_cast<int>(InjectionStrategy::kSuppressBlocktype))
    ->Arg(static_cast<int>(InjectionStrategy::kGaussian))
    ->Unit(benchmark::kMillisecond);

void BM_PrefilterParallel(benchmark::State& state) {
  SetThreadCount(static_cast<int>(state.range(1)));
  const JndParams params;
  InjectionConfig cfg;
  cfg.strategy = static_cast<InjectionStrategy>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ApplyPrefilter(Image(), params, cfg));
  }
  state.SetLabel(std::string(StrategyName(cfg.strategy)));
}
BENCHMARK(BM_PrefilterParallel)
    ->ArgsProduct({{static_cast<int>(InjectionStrategy::kSuppressBlocktype),
                    static_cast<int>(InjectionStrategy::kGaussian)},
                   {1, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_ValidFilterSerial(benchmark::State& state) {
  const FloatPlane x = ToFloat(Image());
  for (auto _ : state) benchmark::DoNotOptimize(reference::ValidFilter(x));
}
BENCHMARK(BM_ValidFilterSerial)->Unit(benchmark::kMillisecond);

void BM_ValidFilterParallel(benchmark::State& state) {
  SetThreads(state);
  const FloatPlane x = ToFloat(Image());
  for (auto _ : state) benchmark::DoNotOptimize(ValidFilter(x));
}
BENCHMARK(BM_ValidFilterParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace jndpf

BENCHMARK_MAIN();
