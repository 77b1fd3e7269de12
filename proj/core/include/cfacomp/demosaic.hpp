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

// Full-color reconstruction of Bayer mosaics.

#pragma once

#include <optional>
#include <string_view>

#include "cfacomp/image.hpp"

namespace cfacomp {

enum class InterpMethod : std::uint8_t {
  kBilinear = 0,
  kHue = 1,       // constant-hue (ratio) interpolation
  kGradient = 2,  // edge-directed green, color-difference red/blue
  kMedian = 3,    // bilinear followed by median-filtered color differences
};

std::string_view to_string(InterpMethod m);
std::optional<InterpMethod> parse_interp(std::string_view name);

// Half-open pixel rectangle. Neighbors outside it are ignored and the
// remaining ones renormalized, so interpolation never reads across it.
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  bool contains(int x, int y) const {
    return x >= x0 && x < x1 && y >= y0 && y < y1;
  }
};

// Visits the Bayer neighbors of (x, y) that bilinear interpolation averages
// to estimate `target` there: the two horizontal or vertical same-color
// pixels at a green site, the four edge neighbors for green at a red/blue
// site, and the four diagonals for red at blue (and vice versa). Nothing is
// visited when (x, y) itself carries `target`.
template <typename F>
void for_each_bilinear_neighbor(int x, int y, Channel target, const Rect& r,
                                F&& f) {
  const Channel own = BayerImage::channel_at(x, y);
  if (own == target) return;
  auto visit = [&](int nx, int ny) {
    if (r.contains(nx, ny)) f(nx, ny);
  };
  if (own == Channel::kGreen) {
    // Red shares rows with even-row greens, blue with odd-row greens.
    const bool along_row = (target == Channel::kRed) == ((y & 1) == 0);
    if (along_row) {
      visit(x - 1, y);
      visit(x + 1, y);
    } else {
      visit(x, y - 1);
      visit(x, y + 1);
    }
  } else if (target == Channel::kGreen) {
    visit(x, y - 1);
    visit(x - 1, y);
    visit(x + 1, y);
    visit(x, y + 1);
  } else {
    visit(x - 1, y - 1);
    visit(x + 1, y - 1);
    visit(x - 1, y + 1);
    visit(x + 1, y + 1);
  }
}

// Reconstructs all three channels at every pixel. Native samples are copied
// through unchanged; interpolated values are clamped to [0, 255].
RgbImage demosaic(const BayerImage& cfa, InterpMethod method);

// Individual methods, exposed for tests and benchmarks.
RgbImage demosaic_bilinear(const BayerImage& cfa);
RgbImage demosaic_hue(const BayerImage& cfa);
RgbImage demosaic_gradient(const BayerImage& cfa);
RgbImage demosaic_median(const BayerImage& cfa);

}  // namespace cfacomp
