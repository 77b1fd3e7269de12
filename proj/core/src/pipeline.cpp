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

#include "cfacomp/pipeline.hpp"

#include <algorithm>
#include <string>

#include "cfacomp/dct.hpp"
#include "cfacomp/error.hpp"
#include "cfacomp/geometry.hpp"
#include "cfacomp/spiht.hpp"

namespace cfacomp {
namespace {

constexpr std::size_t kPlanes = 3;

bool is_iad(Method m) { return m != Method::kCai; }

bool is_rotated(Method m) { return m == Method::kIadRot2x2 || m == Method::kIadRotN; }

RateSplit spiht_split(const PipelineConfig& cfg) {
  const std::size_t overhead = container_overhead(kPlanes);
  if (cfg.target_bytes < overhead + kPlanes * kSpihtHeaderBytes) {
    throw ConfigError("SPIHT target of " + std::to_string(cfg.target_bytes) +
                      " bytes is below the container and plane headers");
  }
  return allocate_rates(cfg.target_bytes - overhead, kSpihtHeaderBytes, cfg.y_fraction);
}

std::vector<std::uint8_t> code_plane(const PlaneImage& p, const ShapeMask& m, PlaneRole role,
                                     const PipelineConfig& cfg, std::size_t budget) {
  if (cfg.coder == Coder::kDct) {
    DctConfig d;
    d.quality = cfg.quality;
    d.subsampling = Subsampling::k444;
    return dct_encode(p, m, d, role).bytes;
  }
  return spiht_encode_plane(p, m, {cfg.levels, cfg.frac_bits}, budget);
}

PlaneImage decode_plane(const CodedContainer& c, PlaneRole role, const ShapeMask& m) {
  const auto& payload = c.plane(role).payload;
  return c.coder == Coder::kDct ? dct_decode(payload, m) : spiht_decode_plane(payload, m);
}

RgbImage ycbcr_planes_to_rgb(const PlaneImage& y, const PlaneImage& cb, const PlaneImage& cr) {
  const auto m = ConversionMatrix::jfif();
  RgbImage out(y.width(), y.height());
  for (int j = 0; j < y.height(); ++j) {
    for (int i = 0; i < y.width(); ++i) {
      const auto rgb = m.to_rgb(y.at(i, j), cb.at(i, j), cr.at(i, j));
      out.at(i, j, Channel::kRed) = std::clamp(rgb[0], 0.0, 255.0);
      out.at(i, j, Channel::kGreen) = std::clamp(rgb[1], 0.0, 255.0);
      out.at(i, j, Channel::kBlue) = std::clamp(rgb[2], 0.0, 255.0);
    }
  }
  return out;
}

CodedContainer encode_cai(const BayerImage& cfa, const PipelineConfig& cfg) {
  const RgbImage rgb = demosaic(cfa, cfg.interp);
  if (cfg.coder == Coder::kDct) {
    DctConfig d;
    d.quality = cfg.quality;
    d.subsampling = Subsampling::k422;
    CodedContainer c = cai_dct_encode(rgb, d);
    c.interp = cfg.interp;
    return c;
  }
  const int w = rgb.width();
  const int h = rgb.height();
  const auto m = ConversionMatrix::jfif();
  PlaneImage y(w, h);
  PlaneImage cb(w, h);
  PlaneImage cr(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const auto v = m.to_ycbcr(rgb.at(i, j, Channel::kRed), rgb.at(i, j, Channel::kGreen),
                                rgb.at(i, j, Channel::kBlue));
      y.at(i, j) = v[0];
      cb.at(i, j) = v[1];
      cr.at(i, j) = v[2];
    }
  }
  const RateSplit split = spiht_split(cfg);
  const auto full = ShapeMask::full(w, h);
  CodedContainer c;
  c.method = Method::kCai;
  c.coder = Coder::kSpiht;
  c.interp = cfg.interp;
  c.width = static_cast<std::uint32_t>(w);
  c.height = static_cast<std::uint32_t>(h);
  c.planes.push_back({PlaneRole::kY, code_plane(y, full, PlaneRole::kY, cfg, split.y)});
  c.planes.push_back({PlaneRole::kCb, code_plane(cb, full, PlaneRole::kCb, cfg, split.cb)});
  c.planes.push_back({PlaneRole::kCr, code_plane(cr, full, PlaneRole::kCr, cfg, split.cr)});
  return c;
}

RgbImage decode_cai(const CodedContainer& c) {
  if (c.coder == Coder::kDct) return cai_dct_decode(c);
  const int w = static_cast<int>(c.width);
  const int h = static_cast<int>(c.height);
  const auto full = ShapeMask::full(w, h);
  return ycbcr_planes_to_rgb(decode_plane(c, PlaneRole::kY, full),
                             decode_plane(c, PlaneRole::kCb, full),
                             decode_plane(c, PlaneRole::kCr, full));
}

}  // namespace

void PipelineConfig::validate() const {
  if (coder == Coder::kDct && (quality < 1 || quality > 100)) {
    throw ConfigError("DCT quality must be in 1..100");
  }
  if (coder == Coder::kSpiht) {
    if (target_bytes == 0) throw ConfigError("SPIHT needs a byte target");
    if (levels < 1) throw ConfigError("wavelet levels must be at least 1");
    if (frac_bits < 0 || frac_bits > 16) throw ConfigError("frac_bits must be in 0..16");
    if (!(y_fraction >= 0.0 && y_fraction <= 1.0)) {
      throw ConfigError("luma fraction must be in [0, 1]");
    }
  }
  if (method == Method::kIadRotN &&
      (block_w < 2 || block_h < 2 || block_w % 2 != 0 || block_h % 2 != 0)) {
    throw ConfigError("conversion block sides must be even and at least 2");
  }
}

std::pair<int, int> conversion_block(const PipelineConfig& cfg) {
  if (cfg.method == Method::kIadRotN) return {cfg.block_w, cfg.block_h};
  return {2, 2};
}

CodedContainer encode(const BayerImage& cfa, const PipelineConfig& cfg) {
  cfg.validate();
  require_even_dims(cfa.width(), cfa.height(), "mosaic");
  if (!is_iad(cfg.method)) return encode_cai(cfa, cfg);

  const auto [bw, bh] = conversion_block(cfg);
  const YCbCrCfa ycc = cfg.method == Method::kIadRotN
                           ? convert_blockN_forward(cfa, bw, bh)
                           : convert_2x2_forward(cfa);

  PlaneImage y_plane;
  ShapeMask y_mask;
  if (is_rotated(cfg.method)) {
    RotatedPlane r = rotate_forward(ycc.y);
    y_plane = std::move(r.samples);
    y_mask = std::move(r.mask);
  } else {
    y_plane = shift_forward(ycc.y).samples;
    y_mask = ShapeMask::full(y_plane.width(), y_plane.height());
  }

  RateSplit split;
  if (cfg.coder == Coder::kSpiht) split = spiht_split(cfg);
  const auto chroma_mask = ShapeMask::full(ycc.cb.width(), ycc.cb.height());

  CodedContainer c;
  c.method = cfg.method;
  c.coder = cfg.coder;
  c.interp = cfg.interp;
  c.width = static_cast<std::uint32_t>(cfa.width());
  c.height = static_cast<std::uint32_t>(cfa.height());
  c.block_w = static_cast<std::uint32_t>(bw);
  c.block_h = static_cast<std::uint32_t>(bh);
  c.planes.push_back({PlaneRole::kY, code_plane(y_plane, y_mask, PlaneRole::kY, cfg, split.y)});
  c.planes.push_back({PlaneRole::kCb, code_plane(ycc.cb, chroma_mask, PlaneRole::kCb, cfg, split.cb)});
  c.planes.push_back({PlaneRole::kCr, code_plane(ycc.cr, chroma_mask, PlaneRole::kCr, cfg, split.cr)});
  return c;
}

BayerImage decode_cfa(const CodedContainer& c, ReverseCache* cache) {
  if (!is_iad(c.method)) throw ConfigError("CAI containers carry no mosaic");
  const int w = static_cast<int>(c.width);
  const int h = static_cast<int>(c.height);
  try {
    require_even_dims(w, h, "container");
  } catch (const InvalidGeometry& e) {
    throw DecodeError(e.what(), 8);
  }

  YCbCrCfa ycc;
  ycc.cb = decode_plane(c, PlaneRole::kCb, ShapeMask::full(w / 2, h / 2));
  ycc.cr = decode_plane(c, PlaneRole::kCr, ShapeMask::full(w / 2, h / 2));
  if (is_rotated(c.method)) {
    RotatedPlane r;
    r.mask = rotated_mask(w, h);
    r.samples = decode_plane(c, PlaneRole::kY, r.mask);
    r.image_width = w;
    r.image_height = h;
    ycc.y = rotate_inverse(r);
  } else {
    ShiftedPlane s;
    s.samples = decode_plane(c, PlaneRole::kY, ShapeMask::full(w / 2, h));
    ycc.y = shift_inverse(s);
  }

  BayerImage cfa;
  if (c.method == Method::kIadRotN) {
    const int bw = static_cast<int>(c.block_w);
    const int bh = static_cast<int>(c.block_h);
    if (bw < 2 || bh < 2 || bw % 2 != 0 || bh % 2 != 0 || bw > w || bh > h) {
      throw DecodeError("invalid conversion block in container", 16);
    }
    ycc.mode = ConversionMode::kBlockN;
    ycc.block_w = bw;
    ycc.block_h = bh;
    ReverseCache local;
    ReverseCache& rc = cache != nullptr ? *cache : local;
    rc.prepare(w, h, bw, bh);
    cfa = convert_blockN_inverse(ycc, rc);
  } else {
    ycc.mode = ConversionMode::kBlock2x2;
    cfa = convert_2x2_inverse(ycc);
  }
  for (double& v : cfa.samples()) v = std::clamp(v, 0.0, 255.0);
  return cfa;
}

RgbImage decode(const CodedContainer& c, InterpMethod interp, ReverseCache* cache) {
  if (!is_iad(c.method)) return decode_cai(c);
  return demosaic(decode_cfa(c, cache), interp);
}

std::size_t luma_sample_count(const BayerImage& cfa, Method method) {
  const std::size_t n = static_cast<std::size_t>(cfa.width()) * cfa.height();
  return is_iad(method) ? n / 2 : n;
}

}  // namespace cfacomp
