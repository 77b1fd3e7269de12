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

#include "cfacomp/cfa.hpp"

namespace cfacomp {

BayerImage mosaic(const RgbImage& rgb) {
  BayerImage out(rgb.width(), rgb.height());
  for (int y = 0; y < rgb.height(); ++y)
    for (int x = 0; x < rgb.width(); ++x)
      out.at(x, y) = rgb.at(x, y, BayerImage::channel_at(x, y));
  return out;
}

RgbImage reference_image(const BayerImage& cfa, InterpMethod interp) {
  return demosaic(cfa, interp);
}

QuincunxPlane green_plane(const BayerImage& cfa) {
  QuincunxPlane q = QuincunxPlane::for_image(cfa.width(), cfa.height());
  for (int y = 0; y < cfa.height(); ++y)
    for (int x = (y & 1); x < cfa.width(); x += 2) q.samples.at(x, y) = cfa.at(x, y);
  return q;
}

}  // namespace cfacomp
