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

// Reversible packings of the quincunx luminance lattice into planes a
// rectangular coder can consume.
//
// The position maps are written in lower-left-origin coordinates (x to the
// right, y upward), where the green sites are exactly the x + y odd
// positions. Planes are stored top-left-origin, so every map goes through
// an explicit vertical flip.

#pragma once

#include "cfacomp/image.hpp"

namespace cfacomp {

struct LatticePoint {
  int x = 0;
  int y = 0;
  bool operator==(const LatticePoint&) const = default;
};

// Horizontal shift: odd columns move onto the even column to their left.
// Requires x + y odd.
LatticePoint shift_position(int x, int y);

// 45-degree rotation into an oblique rectangle inside a
// (w + h) / 2 square bounding box. Requires x + y odd.
LatticePoint rotate_position(int x, int y, int image_width);

// Top-left-origin row of a lower-left-origin y in a plane of this height.
constexpr int flip_row(int y, int height) { return height - 1 - y; }

// Dense (w/2) x h plane.
struct ShiftedPlane {
  PlaneImage samples;
  bool operator==(const ShiftedPlane&) const = default;
};

// ((w+h)/2)^2 bounding box; mask marks the oblique rectangle of data.
struct RotatedPlane {
  PlaneImage samples;
  ShapeMask mask;
  int image_width = 0;
  int image_height = 0;
  bool operator==(const RotatedPlane&) const = default;
};

ShiftedPlane shift_forward(const QuincunxPlane& q);
QuincunxPlane shift_inverse(const ShiftedPlane& s);

// The shape a w x h image's green sites occupy after rotation. Decoders
// rebuild it from the image size alone.
ShapeMask rotated_mask(int image_width, int image_height);
int rotated_extent(int image_width, int image_height);

RotatedPlane rotate_forward(const QuincunxPlane& q);
// Throws InvalidGeometry if the mask or box size does not match the stored
// image size.
QuincunxPlane rotate_inverse(const RotatedPlane& r);

}  // namespace cfacomp
