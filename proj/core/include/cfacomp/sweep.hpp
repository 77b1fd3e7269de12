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

// Rate-distortion sweeps and the synthetic test corpus.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfacomp/colorspace.hpp"
#include "cfacomp/image.hpp"
#include "cfacomp/pipeline.hpp"

namespace cfacomp {

struct NamedImage {
  std::string name;
  RgbImage image;
};

struct RdPoint {
  std::string image;
  Method method = Method::kCai;
  Coder coder = Coder::kDct;
  InterpMethod interp = InterpMethod::kBilinear;
  int block_w = 2;
  int block_h = 2;
  double target = 0.0;  // quality for DCT, container bytes for SPIHT
  std::size_t bytes = 0;
  double psnr_y = 0.0;
  double psnr_cb = 0.0;
  double psnr_cr = 0.0;
  double mean_delta_e = 0.0;
  double compression_ratio = 0.0;
  std::string error;  // non-empty when the item failed
};

// mosaic -> encode -> decode -> metrics against the demosaiced mosaic.
// `cache` may be shared across threads.
RdPoint run_point(const NamedImage& img, const PipelineConfig& cfg, ReverseCache& cache);

// Every (image, config) pair, in that nesting order, run on up to `workers`
// threads. Failures become rows with `error` set.
std::vector<RdPoint> rd_sweep(std::span<const NamedImage> images,
                              std::span<const PipelineConfig> configs, int workers);

inline constexpr std::string_view kCsvHeaderComment = "# cfacomp rd-sweep v1";

void write_csv(std::ostream& out, std::span<const RdPoint> points);

// Value of `field(point)` at `bytes`, linearly interpolated against
// log(bytes) over points sorted by size. Empty outside the covered range.
template <typename Field>
std::optional<double> value_at_bytes(std::vector<RdPoint> curve, double bytes, Field field);

// Gradients, edges, rings and noise textures of the given size.
std::vector<NamedImage> synthetic_corpus(int width, int height, std::uint64_t seed);

}  // namespace cfacomp

#include "cfacomp/sweep_inl.hpp"
