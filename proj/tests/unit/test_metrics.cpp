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

#include <array>
#include <cmath>
#include <random>

#include "cfacomp/error.hpp"
#include "cfacomp/metrics.hpp"
#include "test_util.hpp"

namespace cfacomp {
namespace {

RgbImage uniform(int w, int h, double r, double g, double b) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      img.at(x, y, Channel::kRed) = r;
      img.at(x, y, Channel::kGreen) = g;
      img.at(x, y, Channel::kBlue) = b;
    }
  return img;
}

TEST(Psnr, IdenticalIsInfinite) {
  const RgbImage a = testing::random_rgb(8, 8, 1);
  const PsnrTriple p = psnr_components(a, a);
  EXPECT_TRUE(std::isinf(p.y));
  EXPECT_TRUE(std::isinf(p.cb));
  EXPECT_TRUE(std::isinf(p.cr));
}

TEST(Psnr, UniformLumaOffset) {
  const PsnrTriple p = psnr_components(uniform(4, 4, 16, 16, 16), uniform(4, 4, 0, 0, 0));
  EXPECT_NEAR(p.y, 24.0484040, 1e-6);
  EXPECT_TRUE(std::isinf(p.cb));
  EXPECT_TRUE(std::isinf(p.cr));
}

TEST(Psnr, SymmetricAndMonotoneInNoise) {
  const RgbImage ref = testing::smooth_rgb(32, 32);
  std::mt19937_64 rng(2);
  double prev = INFINITY;
  for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
    std::normal_distribution<double> n(0, sigma);
    RgbImage out = ref;
    for (double& v : out.samples()) v += n(rng);
    const PsnrTriple a = psnr_components(out, ref);
    const PsnrTriple b = psnr_components(ref, out);
    EXPECT_DOUBLE_EQ(a.y, b.y);
    EXPECT_DOUBLE_EQ(a.cr, b.cr);
    EXPECT_LT(a.y, prev);
    prev = a.y;
  }
}

TEST(Psnr, DimensionMismatch) {
  EXPECT_THROW(psnr_components(RgbImage(4, 4), RgbImage(4, 6)), InvalidGeometry);
  EXPECT_THROW(mean_delta_e(RgbImage(4, 4), RgbImage(6, 4)), InvalidGeometry);
}

// Reference values from scikit-image rgb2lab (D65, sRGB).
TEST(Lab, MatchesExternalConverter) {
  struct Case {
    std::array<double, 3> rgb;
    std::array<double, 3> lab;
  };
  const Case cases[] = {
      {{128, 128, 128}, {53.58501345, -0.00147265, 0.00279145}},
      {{129, 128, 128}, {53.66868241, 0.37285041, 0.13498991}},
      {{255, 255, 255}, {100.0, -0.00245494, 0.00465342}},
      {{200, 30, 90}, {44.16088701, 65.80664257, 10.61500193}},
      {{0, 0, 0}, {0, 0, 0}},
  };
  for (const auto& c : cases) {
    const auto lab = srgb_to_lab(c.rgb[0], c.rgb[1], c.rgb[2]);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(lab[i], c.lab[i], 1e-4) << c.rgb[0];
  }
}

TEST(DeltaE, KnownPairs) {
  EXPECT_NEAR(delta_e76({128, 128, 128}, {129, 128, 128}), 0.40570270, 1e-5);
  EXPECT_NEAR(delta_e76({0, 0, 0}, {255, 255, 255}), 100.0, 1e-3);
  EXPECT_EQ(delta_e76({10, 20, 30}, {10, 20, 30}), 0.0);
  EXPECT_NEAR(mean_delta_e(uniform(4, 4, 255, 255, 255), uniform(4, 4, 0, 0, 0)), 100.0, 1e-3);
}

TEST(DeltaE, ClampsToBytesFirst) {
  EXPECT_EQ(delta_e76({300, -5, 128}, {255, 0, 128}), 0.0);
}

TEST(DeltaE, MetricProperties) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(0, 255);
  auto pick = [&] {
    return std::array<double, 3>{double(u(rng)), double(u(rng)), double(u(rng))};
  };
  for (int i = 0; i < 200; ++i) {
    const auto a = pick(), b = pick(), c = pick();
    EXPECT_DOUBLE_EQ(delta_e76(a, b), delta_e76(b, a));
    EXPECT_LE(delta_e76(a, c), delta_e76(a, b) + delta_e76(b, c) + 1e-9);
  }
}

TEST(Evaluate, ReportsRatioAndBytes) {
  const RgbImage ref = testing::smooth_rgb(64, 64);
  RgbImage out = ref;
  out.at(0, 0, Channel::kRed) += 10;
  const QualityReport r = evaluate(out, ref, 1024);
  EXPECT_EQ(r.bytes, 1024u);
  EXPECT_DOUBLE_EQ(r.compression_ratio, 3.0 * 64 * 64 / 1024);
  EXPECT_GT(r.psnr_y, 0.0);
  EXPECT_GT(r.mean_delta_e, 0.0);
}

}  // namespace
}  // namespace cfacomp
