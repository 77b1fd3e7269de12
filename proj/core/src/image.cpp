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

#include "cfacomp/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cfacomp {

void require_even_dims(int width, int height, const char* what) {
  if (width < 2 || height < 2 || (width & 1) != 0 || (height & 1) != 0) {
    throw InvalidGeometry(std::string(what) + ": dimensions " +
                          std::to_string(width) + "x" + std::to_string(height) +
                          " must be even and >= 2");
  }
}

std::uint8_t to_byte(double v) {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v));
}

PlaneImage::PlaneImage(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InvalidGeometry("negative plane size");
  samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

ShapeMask::ShapeMask(int width, int height, bool fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InvalidGeometry("negative mask size");
  valid_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t ShapeMask::count() const {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), 1));
}

RgbImage::RgbImage(int width, int height, double fill)
    : width_(width), height_(height) {
  require_even_dims(width, height, "RgbImage");
  samples_.assign(3 * static_cast<std::size_t>(width) * height, fill);
}

BayerImage::BayerImage(int width, int height, double fill)
    : width_(width), height_(height) {
  require_even_dims(width, height, "BayerImage");
  samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

QuincunxPlane QuincunxPlane::for_image(int width, int height) {
  require_even_dims(width, height, "QuincunxPlane");
  QuincunxPlane q{PlaneImage(width, height), ShapeMask(width, height)};
  for (int y = 0; y < height; ++y)
    for (int x = (y & 1); x < width; x += 2) q.mask.set(x, y, true);
  return q;
}

}  // namespace cfacomp
