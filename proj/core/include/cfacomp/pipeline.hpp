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

// End-to-end pipelines.
//
//   CAI: demosaic -> YCbCr -> code three full-size planes.
//   IAD: format conversion on the mosaic -> shift or rotate the Y lattice
//        -> code Y with its shape and the two quarter-size chroma planes;
//        demosaicing happens after decoding.

#pragma once

#include <cstddef>
#include <memory>
#include <utility>

#include "cfacomp/colorspace.hpp"
#include "cfacomp/container.hpp"
#include "cfacomp/demosaic.hpp"
#include "cfacomp/image.hpp"

namespace cfacomp {

struct PipelineConfig {
  Method method = Method::kIadRot2x2;
  Coder coder = Coder::kSpiht;
  InterpMethod interp = InterpMethod::kBilinear;
  int quality = 75;               // DCT
  std::size_t target_bytes = 0;   // SPIHT: whole container
  double y_fraction = 2.0 / 3.0;  // SPIHT: luma share of the plane payloads
  int block_w = 64;               // iad-rotN conversion block
  int block_h = 64;
  int levels = 5;     // SPIHT wavelet levels
  int frac_bits = 0;  // SPIHT magnitude precision below 1.0

  // Throws ConfigError on inconsistent settings.
  void validate() const;
};

// Conversion block used by a method (2x2 except for iad-rotN).
std::pair<int, int> conversion_block(const PipelineConfig& cfg);

CodedContainer encode(const BayerImage& cfa, const PipelineConfig& cfg);

// Pre-demosaic reconstruction of an IAD container, clamped to [0, 255].
// `cache` may be shared between calls; a private one is used when null.
BayerImage decode_cfa(const CodedContainer& c, ReverseCache* cache = nullptr);

// IAD containers are demosaiced with `interp`; CAI containers ignore it.
RgbImage decode(const CodedContainer& c, InterpMethod interp, ReverseCache* cache = nullptr);

// Luma samples the coder sees (valid ones only).
std::size_t luma_sample_count(const BayerImage& cfa, Method method);

}  // namespace cfacomp
