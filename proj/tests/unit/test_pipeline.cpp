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

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cfacomp/cfa.hpp"
#include "cfacomp/container.hpp"
#include "cfacomp/error.hpp"
#include "cfacomp/metrics.hpp"
#include "cfacomp/pipeline.hpp"
#include "cfacomp/sweep.hpp"
#include "test_util.hpp"

namespace cfacomp {
namespace {

constexpr Method kIad[] = {Method::kIadShift, Method::kIadRot2x2, Method::kIadRotN};
constexpr Method kAllMethods[] = {Method::kCai, Method::kIadShift, Method::kIadRot2x2,
                                  Method::kIadRotN};

PipelineConfig config(Method m, Coder c) {
  PipelineConfig cfg;
  cfg.method = m;
  cfg.coder = c;
  cfg.block_w = 16;
  cfg.block_h = 16;
  cfg.target_bytes = 4000;
  return cfg;
}

RgbImage textured(int w, int h) {
  RgbImage img = testing::smooth_rgb(w, h);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0, 10);
  for (double& v : img.samples()) v = std::clamp(v + n(rng), 0.0, 255.0);
  return img;
}

TEST(Container, RoundTripIsByteExact) {
  const BayerImage cfa = mosaic(textured(32, 32));
  for (Method m : kAllMethods) {
    for (Coder c : {Coder::kDct, Coder::kSpiht}) {
      const CodedContainer cc = encode(cfa, config(m, c));
      const auto bytes = serialize(cc);
      EXPECT_EQ(bytes.size(), cc.byte_size());
      const CodedContainer back = parse_container(bytes);
      EXPECT_EQ(back, cc);
      EXPECT_EQ(serialize(back), bytes);
    }
  }
}

TEST(Container, RejectsMalformedInput) {
  const auto bytes = serialize(encode(mosaic(textured(16, 16)), config(Method::kCai, Coder::kDct)));
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(parse_container(bad), DecodeError);
  bad = bytes;
  bad[4] = 9;  // version
  EXPECT_THROW(parse_container(bad), DecodeError);
  bad = bytes;
  bad[5] = 7;  // method id
  EXPECT_THROW(parse_container(bad), DecodeError);
  bad = bytes;
  bad.push_back(0);
  EXPECT_THROW(parse_container(bad), DecodeError);
  std::vector<std::uint8_t> cut(bytes.begin(), bytes.end() - 1);
  try {
    parse_container(cut);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_LE(e.offset(), cut.size());
  }
}

TEST(Container, FileSizeEqualsReportedBytes) {
  const CodedContainer c =
      encode(mosaic(textured(32, 32)), config(Method::kIadRot2x2, Coder::kSpiht));
  const auto path = std::filesystem::temp_directory_path() / "cfacomp_pipeline_test.cfac";
  write_container(path.string(), c);
  EXPECT_EQ(std::filesystem::file_size(path), c.byte_size());
  EXPECT_EQ(read_container(path.string()), c);
  std::filesystem::remove(path);
}

TEST(Container, NameParsing) {
  for (Method m : kAllMethods) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_EQ(parse_method("iad-rotn"), Method::kIadRotN);
  EXPECT_EQ(parse_coder("spiht"), Coder::kSpiht);
  EXPECT_FALSE(parse_coder("jpeg").has_value());
}

TEST(Config, Validation) {
  PipelineConfig c = config(Method::kIadRotN, Coder::kDct);
  c.quality = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = config(Method::kIadRot2x2, Coder::kSpiht);
  c.target_bytes = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = config(Method::kIadRotN, Coder::kSpiht);
  c.block_w = 5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = config(Method::kIadShift, Coder::kDct);
  c.block_w = 64;
  EXPECT_EQ(conversion_block(c), (std::pair{2, 2}));
  c = config(Method::kCai, Coder::kSpiht);
  c.target_bytes = 10;
  EXPECT_THROW(encode(BayerImage(16, 16), c), ConfigError);
}

TEST(Pipeline, IadLumaIsHalfOfCai) {
  const BayerImage cfa(64, 48);
  EXPECT_EQ(luma_sample_count(cfa, Method::kCai), 64u * 48u);
  for (Method m : kIad) EXPECT_EQ(luma_sample_count(cfa, m), 64u * 48u / 2);
}

TEST(Pipeline, SpihtBudgetRespected) {
  const BayerImage cfa = mosaic(textured(128, 128));
  for (Method m : kAllMethods) {
    PipelineConfig cfg = config(m, Coder::kSpiht);
    cfg.target_bytes = 6000;
    const CodedContainer c = encode(cfa, cfg);
    EXPECT_LE(c.byte_size(), 6000u) << to_string(m);
    EXPECT_GE(c.byte_size(), 6000u - 3 * 8) << to_string(m);
  }
}

TEST(Pipeline, ConstantImageDecodesConstant) {
  const BayerImage cfa(32, 32, 90.0);
  for (Method m : kAllMethods) {
    for (Coder c : {Coder::kDct, Coder::kSpiht}) {
      const RgbImage out = decode(encode(cfa, config(m, c)), InterpMethod::kBilinear);
      ASSERT_EQ(out.width(), 32);
      // SPIHT keeps integer coefficient magnitudes by default.
      const double tol = c == Coder::kDct ? 1e-6 : 1.0;
      for (double v : out.samples()) ASSERT_NEAR(v, out.samples()[0], tol) << to_string(m);
    }
  }
}

TEST(Pipeline, NearLosslessIadAbove45dB) {
  const RgbImage img = textured(64, 64);
  const BayerImage cfa = mosaic(img);
  const RgbImage ref = reference_image(cfa, InterpMethod::kBilinear);
  for (Method m : kIad) {
    PipelineConfig s = config(m, Coder::kSpiht);
    s.target_bytes = 1 << 20;
    s.frac_bits = 4;
    EXPECT_GE(psnr_components(decode(encode(cfa, s), InterpMethod::kBilinear), ref).y, 45.0);
    PipelineConfig d = config(m, Coder::kDct);
    d.quality = 100;
    EXPECT_GE(psnr_components(decode(encode(cfa, d), InterpMethod::kBilinear), ref).y, 45.0)
        << to_string(m);
  }
}

TEST(Pipeline, MaximalFidelityReversesToTheMosaic) {
  const BayerImage cfa = testing::random_bayer(32, 32, 5);
  ReverseCache cache;
  for (Method m : kIad) {
    PipelineConfig cfg = config(m, Coder::kSpiht);
    cfg.target_bytes = 1 << 22;
    cfg.frac_bits = 12;
    const BayerImage back = decode_cfa(encode(cfa, cfg), &cache);
    EXPECT_LE(testing::max_abs_diff(back, cfa), 0.5 / 255.0) << to_string(m);
  }
}

TEST(Pipeline, DecodeWithAnyInterpolation) {
  const BayerImage cfa = mosaic(textured(32, 32));
  const CodedContainer c = encode(cfa, config(Method::kIadRot2x2, Coder::kDct));
  for (auto m : {InterpMethod::kBilinear, InterpMethod::kHue, InterpMethod::kGradient,
                 InterpMethod::kMedian}) {
    const RgbImage out = decode(c, m);
    EXPECT_EQ(out.width(), 32);
    EXPECT_GT(psnr_components(out, reference_image(cfa, m)).y, 25.0);
  }
}

TEST(Pipeline, TruncatedSpihtPlanesStillDecode) {
  const RgbImage img = textured(64, 64);
  const BayerImage cfa = mosaic(img);
  const RgbImage ref = reference_image(cfa, InterpMethod::kBilinear);
  PipelineConfig cfg = config(Method::kIadRotN, Coder::kSpiht);
  cfg.target_bytes = 6000;
  CodedContainer c = encode(cfa, cfg);
  const double full = psnr_components(decode(c, InterpMethod::kBilinear), ref).y;
  for (auto& p : c.planes) p.payload.resize(p.payload.size() / 2);
  const CodedContainer cut = parse_container(serialize(c));
  const double half = psnr_components(decode(cut, InterpMethod::kBilinear), ref).y;
  EXPECT_TRUE(std::isfinite(half));
  EXPECT_LT(half, full);
  EXPECT_GT(half, 15.0);
}

TEST(Pipeline, CorruptPayloadIsDecodeError) {
  CodedContainer c = encode(mosaic(textured(32, 32)), config(Method::kIadRot2x2, Coder::kDct));
  c.planes[0].payload.resize(3);
  EXPECT_THROW(decode(c, InterpMethod::kBilinear), DecodeError);
  c.planes.pop_back();
  EXPECT_THROW(decode(c, InterpMethod::kBilinear), DecodeError);
}

TEST(Sweep, OneConfigOneRowAndErrorRows) {
  const std::vector<NamedImage> images = {{"tex", textured(32, 32)}};
  std::vector<PipelineConfig> configs = {config(Method::kIadRot2x2, Coder::kSpiht)};
  auto pts = rd_sweep(images, configs, 1);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_TRUE(pts[0].error.empty());
  EXPECT_EQ(pts[0].bytes, encode(mosaic(images[0].image), configs[0]).byte_size());

  configs.push_back(config(Method::kCai, Coder::kSpiht));
  configs.back().target_bytes = 20;  // below the plane headers
  configs.push_back(config(Method::kCai, Coder::kDct));
  pts = rd_sweep(images, configs, 2);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_TRUE(pts[0].error.empty());
  EXPECT_FALSE(pts[1].error.empty());
  EXPECT_TRUE(pts[2].error.empty());
  EXPECT_EQ(pts[2].method, Method::kCai);

  std::ostringstream csv;
  write_csv(csv, pts);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, kCsvHeaderComment);
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("image,method,coder,interp,block,target,bytes", 0), 0u);
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  const auto images = synthetic_corpus(32, 32, 3);
  std::vector<PipelineConfig> configs;
  for (Method m : kAllMethods) configs.push_back(config(m, Coder::kDct));
  const auto a = rd_sweep(images, configs, 1);
  const auto b = rd_sweep(images, configs, 3);
  ASSERT_EQ(a.size(), images.size() * configs.size());
  std::ostringstream sa, sb;
  write_csv(sa, a);
  write_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Sweep, ValueAtBytesInterpolatesInLogRate) {
  std::vector<RdPoint> curve(2);
  curve[0].bytes = 1000;
  curve[0].psnr_y = 30;
  curve[1].bytes = 4000;
  curve[1].psnr_y = 40;
  const auto mid = value_at_bytes(curve, 2000, &RdPoint::psnr_y);
  ASSERT_TRUE(mid.has_value());
  EXPECT_NEAR(*mid, 35.0, 1e-9);
  EXPECT_FALSE(value_at_bytes(curve, 5000, &RdPoint::psnr_y).has_value());
}

TEST(Sweep, SyntheticCorpusIsDeterministic) {
  const auto a = synthetic_corpus(32, 32, 9);
  const auto b = synthetic_corpus(32, 32, 9);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].image, b[i].image);
  }
}

}  // namespace
}  // namespace cfacomp
