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

#include <sstream>

#include "cfacomp/cfa.hpp"
#include "cfacomp/demosaic.hpp"
#include "cfacomp/error.hpp"
#include "cfacomp/image_io.hpp"
#include "test_util.hpp"

namespace cfacomp {
namespace {

using testing::random_rgb;

TEST(Mosaic, ConstantTileSelectsPatternChannels) {
  RgbImage rgb(2, 2);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      rgb.at(x, y, Channel::kRed) = 10;
      rgb.at(x, y, Channel::kGreen) = 20;
      rgb.at(x, y, Channel::kBlue) = 30;
    }
  }
  const BayerImage b = mosaic(rgb);
  EXPECT_EQ(b.at(0, 0), 20);
  EXPECT_EQ(b.at(1, 0), 10);
  EXPECT_EQ(b.at(0, 1), 30);
  EXPECT_EQ(b.at(1, 1), 20);
}

TEST(Mosaic, ChannelCountsFor512) {
  const BayerImage b(512, 512);
  int r = 0, g = 0, bl = 0;
  for (int y = 0; y < 512; ++y) {
    for (int x = 0; x < 512; ++x) {
      switch (b.channel(x, y)) {
        case Channel::kRed: ++r; break;
        case Channel::kGreen: ++g; break;
        case Channel::kBlue: ++bl; break;
      }
    }
  }
  EXPECT_EQ(r, 65536);
  EXPECT_EQ(g, 131072);
  EXPECT_EQ(bl, 65536);
}

TEST(Mosaic, KeepsGreenChannelAtGreenSites) {
  const RgbImage rgb = random_rgb(16, 10, 3);
  const BayerImage b = mosaic(rgb);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 16; ++x) {
      EXPECT_EQ(b.at(x, y), rgb.at(x, y, b.channel(x, y)));
      if (BayerImage::is_green(x, y)) EXPECT_EQ(b.channel(x, y), Channel::kGreen);
    }
  }
}

TEST(Mosaic, RejectsOddDimensions) {
  EXPECT_THROW(RgbImage(3, 4), InvalidGeometry);
  EXPECT_THROW(BayerImage(4, 5), InvalidGeometry);
}

TEST(Mosaic, IdempotentThroughDemosaic) {
  const BayerImage b = mosaic(random_rgb(12, 8, 9));
  for (auto m : {InterpMethod::kBilinear, InterpMethod::kHue, InterpMethod::kGradient,
                 InterpMethod::kMedian}) {
    EXPECT_EQ(mosaic(demosaic(b, m)), b) << to_string(m);
  }
}

TEST(Quincunx, ValidCountIsHalfForRandomSizes) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> half(1, 40);
  for (int i = 0; i < 50; ++i) {
    const int w = 2 * half(rng);
    const int h = 2 * half(rng);
    const QuincunxPlane q = QuincunxPlane::for_image(w, h);
    EXPECT_EQ(q.valid_count(), static_cast<std::size_t>(w * h / 2));
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) ASSERT_EQ(q.mask.at(x, y), BayerImage::is_green(x, y));
  }
}

TEST(Quincunx, GreenPlaneCopiesGreenSamples) {
  const BayerImage b = testing::random_bayer(8, 6, 2);
  const QuincunxPlane q = green_plane(b);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 8; ++x) {
      EXPECT_EQ(q.samples.at(x, y), q.mask.at(x, y) ? b.at(x, y) : 0.0);
    }
  }
}

TEST(Reference, ConstantGrayStaysGray) {
  const BayerImage b(8, 8, 77.0);
  const RgbImage ref = reference_image(b, InterpMethod::kBilinear);
  for (double v : ref.samples()) EXPECT_DOUBLE_EQ(v, 77.0);
}

TEST(Reference, RampInteriorIsNeighborAverage) {
  // Ramp v = 10x + 3y: every bilinear average of a linear field is exact.
  BayerImage b(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) b.at(x, y) = 10.0 * x + 3.0 * y;
  const RgbImage ref = reference_image(b, InterpMethod::kBilinear);
  // (1, 1) is green; red comes from (1, 0) and (1, 2), blue from (0, 1), (2, 1).
  EXPECT_DOUBLE_EQ(ref.at(1, 1, Channel::kRed), (10.0 + 16.0) / 2);
  EXPECT_DOUBLE_EQ(ref.at(1, 1, Channel::kBlue), (3.0 + 23.0) / 2);
  // (2, 1) is blue; green from its four edge neighbors, red from diagonals.
  EXPECT_DOUBLE_EQ(ref.at(2, 1, Channel::kGreen), (20.0 + 13.0 + 33.0 + 26.0) / 4);
  EXPECT_DOUBLE_EQ(ref.at(2, 1, Channel::kRed), (10.0 + 30.0 + 16.0 + 36.0) / 4);
}

TEST(ImageIo, PpmRoundTrip) {
  const RgbImage img = random_rgb(6, 4, 11);
  std::stringstream s;
  write_ppm(s, img);
  EXPECT_EQ(read_ppm(s), img);
}

TEST(ImageIo, CfaRoundTripAndHeader) {
  BayerImage b(4, 2);
  for (int i = 0; i < 8; ++i) b.samples()[i] = i * 30.0;
  std::stringstream s;
  write_cfa(s, b);
  const std::string text = s.str();
  EXPECT_EQ(text.substr(0, 14), "CFA1 4 2 GRBG\n");
  EXPECT_EQ(text.size(), 14u + 8u);
  EXPECT_EQ(read_cfa(s), b);
}

TEST(ImageIo, PgmRoundTrip) {
  PlaneImage p(3, 2);
  for (int i = 0; i < 6; ++i) p.samples()[i] = 40.0 * i;
  std::stringstream s;
  write_pgm(s, p);
  EXPECT_EQ(read_pgm(s), p);
}

TEST(ImageIo, RejectsGarbage) {
  std::stringstream s("P3\n2 2\n255\n");
  EXPECT_THROW(read_ppm(s), IoError);
  std::stringstream c("CFA1 4 4 RGGB\n");
  EXPECT_THROW(read_cfa(c), IoError);
}

TEST(ToByte, RoundsHalfAwayAndClamps) {
  EXPECT_EQ(to_byte(2.5), 3);
  EXPECT_EQ(to_byte(2.4999), 2);
  EXPECT_EQ(to_byte(-3.0), 0);
  EXPECT_EQ(to_byte(300.0), 255);
  EXPECT_EQ(to_byte(254.5), 255);
}

}  // namespace
}  // namespace cfacomp
