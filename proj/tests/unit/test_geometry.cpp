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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <utility>
#include <vector>

#include "cfacomp/error.hpp"
#include "cfacomp/geometry.hpp"
#include "test_util.hpp"

namespace cfacomp {
namespace {

using testing::random_quincunx;

TEST(Shift, PositionMap) {
  EXPECT_EQ(shift_position(2, 1), (LatticePoint{1, 1}));
  EXPECT_EQ(shift_position(1, 0), (LatticePoint{0, 0}));
}

TEST(Rotate, PositionMap) { EXPECT_EQ(rotate_position(1, 0, 4), (LatticePoint{0, 1})); }

TEST(Shift, BijectionForAllSmallSizes) {
  for (int w = 2; w <= 16; w += 2) {
    for (int h = 2; h <= 16; h += 2) {
      std::set<std::pair<int, int>> hit;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (((x + y) & 1) == 0) continue;
          const auto p = shift_position(x, y);
          ASSERT_GE(p.x, 0);
          ASSERT_LT(p.x, w / 2);
          ASSERT_GE(p.y, 0);
          ASSERT_LT(p.y, h);
          ASSERT_TRUE(hit.insert({p.x, p.y}).second);
        }
      }
      EXPECT_EQ(hit.size(), static_cast<std::size_t>(w / 2 * h));
    }
  }
}

TEST(Rotate, BijectionOntoMaskForAllSmallSizes) {
  for (int w = 2; w <= 16; w += 2) {
    for (int h = 2; h <= 16; h += 2) {
      const int e = rotated_extent(w, h);
      ASSERT_EQ(e, (w + h) / 2);
      const ShapeMask mask = rotated_mask(w, h);
      std::set<std::pair<int, int>> hit;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (((x + y) & 1) == 0) continue;
          const auto p = rotate_position(x, y, w);
          ASSERT_GE(p.x, 0);
          ASSERT_LT(p.x, e);
          ASSERT_GE(p.y, 0);
          ASSERT_LT(p.y, e);
          ASSERT_TRUE(mask.at(p.x, flip_row(p.y, e)));
          ASSERT_TRUE(hit.insert({p.x, p.y}).second);
        }
      }
      EXPECT_EQ(hit.size(), mask.count());
      EXPECT_EQ(mask.count(), static_cast<std::size_t>(w * h / 2));
    }
  }
}

TEST(Rotate, Count512) {
  const ShapeMask m = rotated_mask(512, 512);
  EXPECT_EQ(m.width(), 512);
  EXPECT_EQ(m.height(), 512);
  EXPECT_EQ(m.count(), 131072u);
}

TEST(Rotate, RowNeighborsBecomeDiagonalNeighbors) {
  // Same-row green sites two columns apart land one step apart on both axes.
  const int w = 16;
  for (int y = 0; y < 16; ++y) {
    for (int x = (y + 1) & 1; x + 2 < w; x += 2) {
      const auto a = rotate_position(x, y, w);
      const auto b = rotate_position(x + 2, y, w);
      EXPECT_EQ(std::abs(a.x - b.x), 1);
      EXPECT_EQ(std::abs(a.y - b.y), 1);
    }
  }
}

TEST(Shift, RoundTripRandom) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const QuincunxPlane q = random_quincunx(16, 16, seed);
    const ShiftedPlane s = shift_forward(q);
    EXPECT_EQ(s.samples.width(), 8);
    EXPECT_EQ(s.samples.height(), 16);
    EXPECT_EQ(shift_inverse(s), q);
  }
}

TEST(Shift, TwoByTwoImage) {
  QuincunxPlane q = QuincunxPlane::for_image(2, 2);
  q.samples.at(0, 0) = 5;
  q.samples.at(1, 1) = 9;
  const ShiftedPlane s = shift_forward(q);
  ASSERT_EQ(s.samples.width(), 1);
  ASSERT_EQ(s.samples.height(), 2);
  std::vector<double> v(s.samples.samples().begin(), s.samples.samples().end());
  std::sort(v.begin(), v.end());
  EXPECT_EQ(v, (std::vector<double>{5, 9}));
  EXPECT_EQ(shift_inverse(s), q);
}

TEST(Rotate, RoundTripSquareAndNonSquare) {
  for (auto [w, h] : {std::pair{2, 2}, {16, 16}, {64, 32}, {32, 64}, {10, 6}}) {
    const QuincunxPlane q = random_quincunx(w, h, w * 100 + h);
    const RotatedPlane r = rotate_forward(q);
    EXPECT_EQ(r.samples.width(), (w + h) / 2);
    EXPECT_EQ(r.mask, rotated_mask(w, h));
    EXPECT_EQ(rotate_inverse(r), q) << w << "x" << h;
  }
}

TEST(Rotate, PreservesValueMultiset) {
  const QuincunxPlane q = random_quincunx(20, 12, 4);
  const RotatedPlane r = rotate_forward(q);
  std::vector<double> a, b;
  for (int y = 0; y < 12; ++y)
    for (int x = 0; x < 20; ++x)
      if (q.mask.at(x, y)) a.push_back(q.samples.at(x, y));
  for (int y = 0; y < r.samples.height(); ++y)
    for (int x = 0; x < r.samples.width(); ++x)
      if (r.mask.at(x, y)) b.push_back(r.samples.at(x, y));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(Rotate, MismatchedGeometryThrows) {
  RotatedPlane r = rotate_forward(random_quincunx(8, 8, 1));
  r.image_width = 10;
  EXPECT_THROW(rotate_inverse(r), InvalidGeometry);
}

}  // namespace
}  // namespace cfacomp
