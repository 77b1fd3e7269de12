// Copyright 2026 The cfacomp Authors
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

#include <cstdint>
#include <random>

#include <benchmark/benchmark.h>

#include "cfacomp/cfa.hpp"
#include "cfacomp/colorspace.hpp"
#include "cfacomp/dct.hpp"
#include "cfacomp/demosaic.hpp"
#include "cfacomp/geometry.hpp"
#include "cfacomp/spiht.hpp"
#include "cfacomp/wavelet.hpp"

namespace cfacomp {
namespace {

// Smooth gradient with mild noise, so coders see realistic statistics.
BayerImage test_mosaic(int size) {
  RgbImage rgb(size, size);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 4.0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double base = 64.0 + 128.0 * (x + y) / (2.0 * size);
      rgb.at(x, y, Channel::kRed) = base + noise(rng);
      rgb.at(x, y, Channel::kGreen) = 255.0 - base + noise(rng);
      rgb.at(x, y, Channel::kBlue) = 0.5 * base + noise(rng);
    }
  }
  return mosaic(rgb);
}

void BM_Demosaic(benchmark::State& state) {
  const BayerImage cfa = test_mosaic(static_cast<int>(state.range(0)));
  const auto method = static_cast<InterpMethod>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(demosaic(cfa, method));
  state.SetLabel(std::string(to_string(method)));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Demosaic)->ArgsProduct({{256, 512}, {0, 1, 2, 3}});

void BM_DctEncodeRotated(benchmark::State& state) {
  const RotatedPlane r = rotate_forward(convert_2x2_forward(test_mosaic(512)).y);
  DctConfig cfg;
  cfg.quality = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dct_encode(r.samples, r.mask, cfg, PlaneRole::kY));
}
BENCHMARK(BM_DctEncodeRotated)->Arg(50)->Arg(90);

void BM_SadwtSpiht(benchmark::State& state) {
  const RotatedPlane r = rotate_forward(convert_2x2_forward(test_mosaic(512)).y);
  const auto budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const CoeffPyramid p = sadwt_forward(r.samples, r.mask, {WaveletFilter::kCdf97, 5});
    benchmark::DoNotOptimize(spiht_encode(p, budget));
  }
}
BENCHMARK(BM_SadwtSpiht)->Arg(8 * 1024)->Arg(40 * 1024);

void BM_BlockNForward(benchmark::State& state) {
  const BayerImage cfa = test_mosaic(512);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(convert_blockN_forward(cfa, n, n));
}
BENCHMARK(BM_BlockNForward)->Arg(8)->Arg(64);

void BM_BlockNInverse(benchmark::State& state) {
  const BayerImage cfa = test_mosaic(512);
  const int n = static_cast<int>(state.range(0));
  const YCbCrCfa ycc = convert_blockN_forward(cfa, n, n);
  ReverseCache cache;
  cache.prepare(512, 512, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(convert_blockN_inverse(ycc, cache));
}
BENCHMARK(BM_BlockNInverse)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cfacomp

BENCHMARK_MAIN();
