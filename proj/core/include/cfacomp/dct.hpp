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

// Baseline 8x8 block-DCT coder with support for shaped planes.
//
// Blocks with no valid pixel are skipped entirely (the decoder recomputes
// the classification from the mask), partially valid blocks are padded by
// mirroring across the block diagonal before the transform.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cfacomp/container.hpp"
#include "cfacomp/image.hpp"

namespace cfacomp {

enum class Subsampling : std::uint8_t { k444 = 0, k422 = 1 };

// Natural (row-major) order.
using QuantTable = std::array<std::uint16_t, 64>;

// Annex K table scaled by the usual 50-pivot quality rule, entries in
// [1, 255].
QuantTable quant_table(int quality, bool chroma);

struct DctConfig {
  int quality = 75;
  Subsampling subsampling = Subsampling::k422;
  // Off only for measuring what skipping saves.
  bool skip_blank_blocks = true;

  QuantTable luma_table() const { return quant_table(quality, false); }
  QuantTable chroma_table() const { return quant_table(quality, true); }
};

enum class BlockClass : std::uint8_t { kData = 0, kBlank = 1, kBoundary = 2 };

struct BlockGrid {
  int cols = 0;
  int rows = 0;
  std::vector<BlockClass> classes;  // row-major

  BlockClass at(int bx, int by) const {
    return classes[static_cast<std::size_t>(by) * cols + bx];
  }
  std::size_t count(BlockClass c) const;
};

// Pixels beyond the mask (when its size is not a multiple of 8) count as
// invalid, except for full masks, whose planes are edge-replicated.
BlockGrid classify_blocks(const ShapeMask& mask);

using Block = std::array<double, 64>;
using BlockValidity = std::array<bool, 64>;

// For each pixel of a triangular block, the index it copies from (itself
// when valid). Empty when the valid region is not a corner triangle.
std::optional<std::array<std::uint8_t, 64>> mirror_table(const BlockValidity& valid);

// Throws Error when `valid` is not a corner triangle.
Block pad_boundary_block(const Block& block, const BlockValidity& valid);

// Orthonormal 2-D DCT-II and its inverse, row-major.
Block fdct8x8(const Block& in);
Block idct8x8(const Block& in);

struct DctStream {
  std::vector<std::uint8_t> bytes;  // plane header plus entropy-coded data
  std::size_t entropy_bits = 0;     // before byte padding
};

inline constexpr std::size_t kDctPlaneHeaderBytes = 4;

DctStream dct_encode(const PlaneImage& plane, const ShapeMask& mask,
                     const DctConfig& cfg, PlaneRole role);

// `mask` must equal the encoder's. Samples outside it are left at zero.
// Throws DecodeError on truncated or invalid data.
PlaneImage dct_decode(std::span<const std::uint8_t> bytes, const ShapeMask& mask);

// Conventional path on a full-color image: YCbCr, chroma decimation by
// averaging horizontal pairs when 4:2:2, then three dense planes.
CodedContainer cai_dct_encode(const RgbImage& rgb, const DctConfig& cfg);
RgbImage cai_dct_decode(const CodedContainer& c);

}  // namespace cfacomp
