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

#include "cfacomp/geometry.hpp"

#include <string>

#include "cfacomp/error.hpp"

namespace cfacomp {

LatticePoint shift_position(int x, int y) {
  return {(x & 1) == 0 ? x / 2 : (x - 1) / 2, y};
}

LatticePoint rotate_position(int x, int y, int image_width) {
  return {(x + y - 1) / 2, (-x + y + image_width - 1) / 2};
}

int rotated_extent(int image_width, int image_height) {
  return (image_width + image_height) / 2;
}

ShiftedPlane shift_forward(const QuincunxPlane& q) {
  const int w = q.width(), h = q.height();
  require_even_dims(w, h, "shift_forward");
  ShiftedPlane out{PlaneImage(w / 2, h)};
  for (int row = 0; row < h; ++row) {
    const int y = flip_row(row, h);
    for (int x = (row & 1); x < w; x += 2) {
      const LatticePoint p = shift_position(x, y);
      out.samples.at(p.x, flip_row(p.y, h)) = q.samples.at(x, row);
    }
  }
  return out;
}

QuincunxPlane shift_inverse(const ShiftedPlane& s) {
  const int w = 2 * s.samples.width(), h = s.samples.height();
  QuincunxPlane out = QuincunxPlane::for_image(w, h);
  for (int row = 0; row < h; ++row) {
    const int y = flip_row(row, h);
    for (int x = (row & 1); x < w; x += 2) {
      const LatticePoint p = shift_position(x, y);
      out.samples.at(x, row) = s.samples.at(p.x, flip_row(p.y, h));
    }
  }
  return out;
}

ShapeMask rotated_mask(int image_width, int image_height) {
  require_even_dims(image_width, image_height, "rotated_mask");
  const int extent = rotated_extent(image_width, image_height);
  ShapeMask mask(extent, extent);
  for (int row = 0; row < image_height; ++row) {
    const int y = flip_row(row, image_height);
    for (int x = (row & 1); x < image_width; x += 2) {
      const LatticePoint p = rotate_position(x, y, image_width);
      mask.set(p.x, flip_row(p.y, extent), true);
    }
  }
  return mask;
}

RotatedPlane rotate_forward(const QuincunxPlane& q) {
  const int w = q.width(), h = q.height();
  require_even_dims(w, h, "rotate_forward");
  const int extent = rotated_extent(w, h);
  RotatedPlane out{PlaneImage(extent, extent), ShapeMask(extent, extent), w, h};
  for (int row = 0; row < h; ++row) {
    const int y = flip_row(row, h);
    for (int x = (row & 1); x < w; x += 2) {
      const LatticePoint p = rotate_position(x, y, w);
      const int r = flip_row(p.y, extent);
      out.samples.at(p.x, r) = q.samples.at(x, row);
      out.mask.set(p.x, r, true);
    }
  }
  return out;
}

QuincunxPlane rotate_inverse(const RotatedPlane& r) {
  const int w = r.image_width, h = r.image_height;
  require_even_dims(w, h, "rotate_inverse");
  const int extent = rotated_extent(w, h);
  if (r.samples.width() != extent || r.samples.height() != extent ||
      !(r.mask == rotated_mask(w, h)))
    throw InvalidGeometry("rotated plane does not match a " + std::to_string(w) +
                          "x" + std::to_string(h) + " image");
  QuincunxPlane out = QuincunxPlane::for_image(w, h);
  for (int row = 0; row < h; ++row) {
    const int y = flip_row(row, h);
    for (int x = (row & 1); x < w; x += 2) {
      const LatticePoint p = rotate_position(x, y, w);
      out.samples.at(x, row) = r.samples.at(p.x, flip_row(p.y, extent));
    }
  }
  return out;
}

}  // namespace cfacomp
