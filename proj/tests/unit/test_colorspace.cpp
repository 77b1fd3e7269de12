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
#include <thread>
#include <utility>
#include <vector>

#include "cfacomp/colorspace.hpp"
#include "cfacomp/error.hpp"
#include "test_util.hpp"

namespace cfacomp {
namespace {

using testing::random_bayer;

constexpr double kRoundTrip = 1e-6;

double bayer_error(const BayerImage& a, const BayerImage& b) {
  return testing::max_abs_diff(a, b);
}

TEST(ConversionMatrix, JfifRowsAndGrayFixedPoint) {
  const auto m = ConversionMatrix::jfif();
  EXPECT_DOUBLE_EQ(m.a[0][0], 0.299);
  EXPECT_DOUBLE_EQ(m.a[0][1], 0.587);
  EXPECT_DOUBLE_EQ(m.a[0][2], 0.114);
  const auto ycc = m.to_ycbcr(128, 128, 128);
  EXPECT_NEAR(ycc[0], 128, 1e-9);
  EXPECT_NEAR(ycc[1], 128, 1e-9);
  EXPECT_NEAR(ycc[2], 128, 1e-9);
  const auto rgb = m.to_rgb(ycc[0], ycc[1], ycc[2]);
  EXPECT_NEAR(rgb[0], 128, 1e-9);
}

TEST(ConversionMatrix, ThreeDecimalVariantAndLookup) {
  EXPECT_DOUBLE_EQ(ConversionMatrix::three_decimal().a[0][0], 0.297);
  EXPECT_EQ(ConversionMatrix::by_name("jfif"), ConversionMatrix::jfif());
  EXPECT_EQ(ConversionMatrix::by_name("three-decimal"), ConversionMatrix::three_decimal());
  EXPECT_FALSE(ConversionMatrix::by_name("bt709").has_value());
}

TEST(ConversionMatrix, SingularMatrixThrows) {
  ConversionMatrix m{};
  m.a = {{{1, 0, 0}, {1, 0, 0}, {0, 0, 1}}};
  EXPECT_THROW(m.to_rgb(1, 2, 3), SingularMatrix);
  EXPECT_THROW(Block2x2Matrix(m).inverse(), SingularMatrix);
}

TEST(Block2x2, GrayBlockMapsToGray) {
  BayerImage b(2, 2, 128.0);
  const YCbCrCfa c = convert_2x2_forward(b);
  EXPECT_NEAR(c.y.samples.at(0, 0), 128, 1e-9);
  EXPECT_NEAR(c.y.samples.at(1, 1), 128, 1e-9);
  EXPECT_NEAR(c.cb.at(0, 0), 128, 1e-9);
  EXPECT_NEAR(c.cr.at(0, 0), 128, 1e-9);
}

TEST(Block2x2, PureRedBlock) {
  const auto m = ConversionMatrix::jfif();
  BayerImage b(2, 2, 0.0);
  b.at(1, 0) = 255;  // red site
  const YCbCrCfa c = convert_2x2_forward(b);
  EXPECT_NEAR(c.y.samples.at(0, 0), m.a[0][0] * 255, 1e-9);
  EXPECT_NEAR(c.y.samples.at(1, 1), m.a[0][0] * 255, 1e-9);
  EXPECT_NEAR(c.cb.at(0, 0), 128 + m.a[1][0] * 255, 1e-9);
  EXPECT_NEAR(c.cr.at(0, 0), 128 + m.a[2][0] * 255, 1e-9);
}

TEST(Block2x2, DeterminantNonzeroAndInverseIsIdentity) {
  const Block2x2Matrix bm(ConversionMatrix::jfif());
  EXPECT_GT(std::abs(bm.determinant()), 1e-3);
  const auto& f = bm.forward();
  const auto& inv = bm.inverse();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int k = 0; k < 4; ++k) s += f[i][k] * inv[k][j];
      EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(Block2x2, ZeroLumaNeutralChromaIsBlack) {
  YCbCrCfa c = convert_2x2_forward(BayerImage(4, 4, 50.0));
  for (double& v : c.y.samples.samples()) v = 0;
  for (double& v : c.cb.samples()) v = 128;
  for (double& v : c.cr.samples()) v = 128;
  const BayerImage b = convert_2x2_inverse(c);
  for (double v : b.samples()) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(Block2x2, RandomRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BayerImage b = random_bayer(16, 12, seed);
    const YCbCrCfa c = convert_2x2_forward(b);
    EXPECT_EQ(c.sample_count(), b.size());
    EXPECT_LE(bayer_error(convert_2x2_inverse(c), b), 1e-9);
  }
}

TEST(BlockN, ConstantMosaicGivesNeutralChroma) {
  for (int bs : {2, 4, 8}) {
    const YCbCrCfa c = convert_blockN_forward(BayerImage(16, 16, 90.0), bs, bs);
    for (double v : c.cb.samples()) EXPECT_NEAR(v, 128, 1e-9);
    for (double v : c.cr.samples()) EXPECT_NEAR(v, 128, 1e-9);
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x)
        if (c.y.mask.at(x, y)) EXPECT_NEAR(c.y.samples.at(x, y), 90, 1e-9);
  }
}

TEST(BlockN, LumaRowAtG22MatchesNeighborWeights) {
  // In 1-based (row, column) naming G22 is (x=1, y=1); its luma uses R12, R32 (vertical)
  // and B21, B23 (horizontal).
  const auto m = ConversionMatrix::jfif();
  const BayerImage b = random_bayer(4, 4, 42);
  const YCbCrCfa c = convert_blockN_forward(b, 4, 4, m);
  const double expect = m.a[0][0] / 2 * (b.at(1, 0) + b.at(1, 2)) + m.a[0][1] * b.at(1, 1) +
                        m.a[0][2] / 2 * (b.at(0, 1) + b.at(2, 1));
  EXPECT_NEAR(c.y.samples.at(1, 1), expect, 1e-9);
}

TEST(BlockN, ForwardOperatorRowAtG22) {
  const auto m = ConversionMatrix::jfif();
  const auto f = build_forward_matrix(4, 4, m);
  std::array<double, 16> expect{};
  expect[1] = m.a[0][0] / 2;
  expect[4] = m.a[0][2] / 2;
  expect[5] = m.a[0][1];
  expect[6] = m.a[0][2] / 2;
  expect[9] = m.a[0][0] / 2;
  for (int j = 0; j < 16; ++j) EXPECT_NEAR(f[5 * 16 + j], expect[j], 1e-12) << j;
}

TEST(BlockN, ReverseRowAtG22MatchesReference) {
  // Reference row in units of 1e-4, columns Y11 Cr12 Y13 Cr14 Cb21 Y22 ...
  constexpr std::array<double, 16> reference = {-1243, -3832, -1079, 217,  -1763, 14895,
                                                -1736, -135,  -974,  -3658, -868,  136,
                                                35,    -638,  26,    37};
  const ReverseBlockMatrix r = build_reverse_matrix(4, 4);
  for (int j = 0; j < 16; ++j) {
    // The reference Y33 entry sits 7e-4 away from the computed -0.0861.
    const double tol = j == 10 ? 1e-3 : 5e-4;
    EXPECT_NEAR(r.at(5, j), reference[j] * 1e-4, tol) << "column " << j;
  }
}

TEST(BlockN, TwoByTwoReverseEqualsBlockInverse) {
  const auto m = ConversionMatrix::jfif();
  const ReverseBlockMatrix r = build_reverse_matrix(2, 2, m);
  const auto& inv = Block2x2Matrix(m).inverse();
  // Mosaic order G, R, B, G; Block2x2 order (R, G_ul, G_lr, B) -> (Y_ul,
  // Y_lr, Cb, Cr). Converted order Y_ul, Cr, Cb, Y_lr.
  constexpr int mosaic_to_b[4] = {1, 0, 3, 2};
  constexpr int conv_to_b[4] = {0, 3, 2, 1};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      EXPECT_NEAR(r.at(i, j), inv[mosaic_to_b[i]][conv_to_b[j]], 1e-12);
}

TEST(BlockN, ForwardTimesReverseIsIdentityFor8) {
  const auto m = ConversionMatrix::jfif();
  const auto f = build_forward_matrix(8, 8, m);
  const ReverseBlockMatrix r = build_reverse_matrix(8, 8, m);
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      double s = 0;
      for (int k = 0; k < 64; ++k) s += f[i * 64 + k] * r.at(k, j);
      ASSERT_NEAR(s, i == j ? 1.0 : 0.0, 1e-9);
    }
  }
}

TEST(BlockN, RoundTripAcrossBlockSizes) {
  ReverseCache cache;
  const BayerImage b = random_bayer(32, 24, 7);
  for (auto [bw, bh] : {std::pair{2, 2}, {4, 4}, {8, 8}, {16, 16}, {6, 4}, {32, 24}}) {
    const YCbCrCfa c = convert_blockN_forward(b, bw, bh);
    EXPECT_EQ(c.sample_count(), b.size());
    cache.prepare(32, 24, bw, bh);
    EXPECT_LE(bayer_error(convert_blockN_inverse(c, cache), b), kRoundTrip) << bw << "x" << bh;
  }
}

TEST(BlockN, Random64RoundTripWholeBlock) {
  ReverseCache cache;
  cache.prepare(64, 64, 64, 64);
  const BayerImage b = random_bayer(64, 64, 8);
  EXPECT_LE(bayer_error(convert_blockN_inverse(convert_blockN_forward(b, 64, 64), cache), b),
            kRoundTrip);
}

TEST(BlockN, UnpreparedGeometryIsConfigError) {
  ReverseCache cache;
  const YCbCrCfa c = convert_blockN_forward(random_bayer(8, 8, 1), 4, 4);
  EXPECT_THROW(convert_blockN_inverse(c, cache), ConfigError);
}

TEST(BlockN, RejectsBadBlocks) {
  const BayerImage b(8, 8);
  EXPECT_THROW(convert_blockN_forward(b, 3, 4), InvalidGeometry);
  EXPECT_THROW(convert_blockN_forward(b, 16, 4), InvalidGeometry);
}

TEST(BlockN, Linearity) {
  const BayerImage a = random_bayer(16, 16, 3);
  const BayerImage b = random_bayer(16, 16, 4);
  BayerImage mix(16, 16);
  for (std::size_t i = 0; i < mix.size(); ++i)
    mix.samples()[i] = 0.3 * a.samples()[i] + 1.7 * b.samples()[i];
  const auto ca = convert_blockN_forward(a, 8, 8);
  const auto cb = convert_blockN_forward(b, 8, 8);
  const auto cm = convert_blockN_forward(mix, 8, 8);
  for (std::size_t i = 0; i < cm.cb.size(); ++i) {
    const double expect = 0.3 * (ca.cb.samples()[i] - 128) + 1.7 * (cb.cb.samples()[i] - 128);
    EXPECT_NEAR(cm.cb.samples()[i] - 128, expect, 1e-9);
  }
  for (std::size_t i = 0; i < cm.y.samples.size(); ++i) {
    const double expect = 0.3 * ca.y.samples.samples()[i] + 1.7 * cb.y.samples.samples()[i];
    EXPECT_NEAR(cm.y.samples.samples()[i], expect, 1e-9);
  }
}

TEST(BlockN, EdgeBlockExtents) {
  EXPECT_EQ(block_extents(512, 64), std::vector<int>(8, 64));
  EXPECT_EQ(block_extents(100, 64), (std::vector<int>{64, 36}));
}

TEST(BlockN, BoundaryFractions) {
  EXPECT_DOUBLE_EQ(block_boundary_y_fraction(512, 512, 4, 4), 0.75);
  EXPECT_DOUBLE_EQ(block_boundary_y_fraction(512, 512, 64, 64), 126.0 / 2048.0);
}

TEST(ReverseCache, SharedAcrossThreads) {
  ReverseCache cache;
  std::vector<std::thread> threads;
  std::vector<const BlockSolver*> seen(4);
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&, i] { seen[i] = cache.get_or_build(8, 8).get(); });
  }
  for (auto& t : threads) t.join();
  for (int i = 1; i < 4; ++i) EXPECT_EQ(seen[i], seen[0]);
}

}  // namespace
}  // namespace cfacomp
