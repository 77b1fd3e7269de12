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

// 9/7 biorthogonal wavelet transforms, dense and shape-adaptive.
//
// Coefficients use the Mallat layout in a plane the size of the input. The
// shape-adaptive transform filters only the valid run of each line and keeps
// the global subsampling grid: samples at even positions become low-pass
// coefficients at position/2, odd ones high-pass at position/2, so each band
// holds the subsampled shape.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cfacomp/image.hpp"

namespace cfacomp {

enum class WaveletFilter : std::uint8_t { kCdf97 = 0 };

struct WaveletConfig {
  WaveletFilter filter = WaveletFilter::kCdf97;
  int levels = 5;
};

struct CoeffPyramid {
  PlaneImage coeffs;
  ShapeMask mask;   // valid coefficients; full for dense transforms
  ShapeMask shape;  // valid input samples the pyramid was built from
  int levels = 0;

  int width() const { return coeffs.width(); }
  int height() const { return coeffs.height(); }
  std::size_t valid_count() const { return mask.count(); }
};

// floor(log2(min(w, h))).
int max_levels(int width, int height);

// In-place 1-D lifting over one run whose first sample sits at a position
// of the given parity (even positions are low-pass). On return the low
// outputs come first, then the high ones. A lone sample is scaled by the
// low-pass DC gain whatever its parity.
void lift_forward(std::span<double> x, int parity = 0);
void lift_inverse(std::span<double> x, int parity = 0);

// Throws ConfigError when levels is outside 1..max_levels.
CoeffPyramid dwt_forward(const PlaneImage& plane, const WaveletConfig& cfg);
PlaneImage dwt_inverse(const CoeffPyramid& pyr);

// Throws UnsupportedShape when a row or column run is not contiguous.
// Samples outside the mask are ignored; the inverse leaves them at zero.
CoeffPyramid sadwt_forward(const PlaneImage& plane, const ShapeMask& mask,
                           const WaveletConfig& cfg);
PlaneImage sadwt_inverse(const CoeffPyramid& pyr);

// Coefficient mask the forward transform would produce, from the shape alone.
ShapeMask sadwt_mask(const ShapeMask& mask, int levels);

// Zero pyramid with the masks a decoder needs before filling coefficients.
CoeffPyramid empty_pyramid(const ShapeMask& shape, int levels);

}  // namespace cfacomp
