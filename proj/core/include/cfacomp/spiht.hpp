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

// Set partitioning in hierarchical trees, binary (no arithmetic coding).
//
// Coefficients outside the pyramid mask are never visited: they are not in
// any list, and a set is only listed while it still holds a valid
// coefficient, so trees over blank regions cost no bits at all.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cfacomp/wavelet.hpp"

namespace cfacomp {

// Plane payload header:
//   levels u8 | filter u8 | n_max u8 (0xFF: all zero) | frac_bits u8 |
//   budget u32 | coded bits u32
inline constexpr std::size_t kSpihtHeaderBytes = 12;
inline constexpr std::uint8_t kSpihtEmpty = 0xFF;

// Parent/child relations of the spatial orientation trees. The lowest band
// is split into 2x2 groups; the top-left member of each group has no
// children, the other three each own a 2x2 block in the matching detail
// band. Elsewhere (r, c) owns the 2x2 block at (2r, 2c).
class SpihtTree {
 public:
  // Dimensions must be multiples of 2^(levels+1).
  SpihtTree(int width, int height, int levels);

  int width() const { return width_; }
  int height() const { return height_; }
  int ll_width() const { return wl_; }
  int ll_height() const { return hl_; }

  // Writes up to four child indices (row-major), returns the count.
  int children(int index, std::uint32_t out[4]) const;
  bool in_ll(int index) const {
    return index / width_ < hl_ && index % width_ < wl_;
  }

 private:
  int width_;
  int height_;
  int wl_;
  int hl_;
};

// Root groups of the lowest band whose four members and all descendants are
// outside the mask.
int blank_root_groups(const ShapeMask& coeff_mask, int levels);

// Codes until the bit budget (payload bytes including the header) runs out
// or every bit plane is done. Throws ConfigError if the budget cannot hold
// the header. Pyramid dimensions must be multiples of 2^(levels+1).
std::vector<std::uint8_t> spiht_encode(const CoeffPyramid& pyr, std::size_t budget_bytes,
                                       int frac_bits = 0);

// Fills the coefficients of `pyr` (masks and levels already set). Short
// streams decode to the best approximation they carry.
void spiht_decode(std::span<const std::uint8_t> bytes, CoeffPyramid& pyr);

struct SpihtConfig {
  int levels = 5;
  int frac_bits = 0;
};

// Pyramid levels actually used for a plane: cfg.levels clamped so the
// lowest band stays at least 2x2 before padding.
int effective_levels(int width, int height, int requested);

// Whole-plane path: pad to a multiple of 2^(levels+1) with invalid samples,
// shape-adaptive transform, SPIHT.
std::vector<std::uint8_t> spiht_encode_plane(const PlaneImage& plane, const ShapeMask& mask,
                                             const SpihtConfig& cfg, std::size_t budget_bytes);
// `mask` is the encoder's plane mask. Samples outside it are zero.
PlaneImage spiht_decode_plane(std::span<const std::uint8_t> bytes, const ShapeMask& mask);

struct RateSplit {
  std::size_t y = 0;
  std::size_t cb = 0;
  std::size_t cr = 0;
};

// Splits `total` bytes over three plane payloads of `header_bytes` each:
// after the headers, Y gets `y_fraction` and the chroma planes halve the
// rest. Throws ConfigError if total < 3 * header_bytes or the fraction is
// outside [0, 1].
RateSplit allocate_rates(std::size_t total, std::size_t header_bytes,
                         double y_fraction = 2.0 / 3.0);

}  // namespace cfacomp
