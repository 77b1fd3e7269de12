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

#include "cfacomp/dct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cfacomp/bitio.hpp"
#include "cfacomp/colorspace.hpp"
#include "cfacomp/error.hpp"
#include "jpeg_tables.hpp"

namespace cfacomp {
namespace {

constexpr int kMaxAc = 1023;
constexpr int kMaxDc = 2047;
constexpr std::uint8_t kEob = 0x00;
constexpr std::uint8_t kZrl = 0xF0;
constexpr std::uint8_t kFlagSkipBlank = 0x01;

struct HuffTable {
  // Encoder side, indexed by symbol.
  std::array<std::uint16_t, 256> code{};
  std::array<std::uint8_t, 256> length{};
  // Decoder side, indexed by code length.
  std::array<std::int32_t, 17> mincode{};
  std::array<std::int32_t, 17> maxcode{};
  std::array<std::int32_t, 17> valptr{};
  std::vector<std::uint8_t> values;
};

HuffTable build_table(std::span<const std::uint8_t> bits,
                      std::span<const std::uint8_t> values) {
  HuffTable t;
  t.values.assign(values.begin(), values.end());
  std::int32_t code = 0;
  std::int32_t k = 0;
  for (int len = 1; len <= 16; ++len) {
    const int n = bits[len - 1];
    if (n == 0) {
      t.maxcode[len] = -1;
    } else {
      t.valptr[len] = k;
      t.mincode[len] = code;
      for (int i = 0; i < n; ++i, ++k, ++code) {
        t.code[values[k]] = static_cast<std::uint16_t>(code);
        t.length[values[k]] = static_cast<std::uint8_t>(len);
      }
      t.maxcode[len] = code - 1;
    }
    code <<= 1;
  }
  return t;
}

struct TableSet {
  HuffTable dc;
  HuffTable ac;
};

const TableSet& tables_for(PlaneRole role) {
  static const TableSet luma{build_table(jpeg::kDcLumaBits, jpeg::kDcValues),
                             build_table(jpeg::kAcLumaBits, jpeg::kAcLumaValues)};
  static const TableSet chroma{build_table(jpeg::kDcChromaBits, jpeg::kDcValues),
                               build_table(jpeg::kAcChromaBits, jpeg::kAcChromaValues)};
  return role == PlaneRole::kY ? luma : chroma;
}

int category(int v) {
  int a = v < 0 ? -v : v;
  int s = 0;
  while (a != 0) {
    a >>= 1;
    ++s;
  }
  return s;
}

void put_symbol(BitWriter& w, const HuffTable& t, std::uint8_t sym) {
  w.put_bits(t.code[sym], t.length[sym]);
}

// Magnitude category already emitted; writes the extra bits.
void put_value(BitWriter& w, int v, int s) {
  if (s == 0) return;
  const int bits = v >= 0 ? v : v + (1 << s) - 1;
  w.put_bits(static_cast<std::uint32_t>(bits), s);
}

class BlockDecoder {
 public:
  explicit BlockDecoder(std::span<const std::uint8_t> data, std::size_t base)
      : in_(data), base_(base) {}

  std::uint8_t symbol(const HuffTable& t) {
    std::int32_t code = bit();
    int len = 1;
    while (code > t.maxcode[len]) {
      if (++len > 16) fail("invalid Huffman code");
      code = (code << 1) | bit();
    }
    return t.values[t.valptr[len] + code - t.mincode[len]];
  }

  int value(int s) {
    if (s == 0) return 0;
    std::uint32_t r = 0;
    if (!in_.get_bits(s, r)) fail("truncated DCT data");
    const int v = static_cast<int>(r);
    return v < (1 << (s - 1)) ? v - (1 << s) + 1 : v;
  }

  [[noreturn]] void fail(const char* what) const {
    throw DecodeError(what, base_ + in_.byte_offset());
  }

 private:
  int bit() {
    bool b = false;
    if (!in_.get_bit(b)) fail("truncated DCT data");
    return b ? 1 : 0;
  }

  BitReader in_;
  std::size_t base_;
};

const std::array<std::array<double, 8>, 8>& dct_basis() {
  static const auto basis = [] {
    std::array<std::array<double, 8>, 8> c{};
    for (int u = 0; u < 8; ++u) {
      const double scale = u == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
      for (int x = 0; x < 8; ++x) {
        c[u][x] = scale * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
      }
    }
    return c;
  }();
  return basis;
}

int ceil8(int v) { return (v + 7) / 8; }

bool is_full(const ShapeMask& mask) {
  return mask.count() ==
         static_cast<std::size_t>(mask.width()) * static_cast<std::size_t>(mask.height());
}

// Canonical table for a triangle x + y <= t with its apex at (0, 0).
std::array<std::uint8_t, 64> canonical_mirror(int t) {
  auto valid = [t](int x, int y) {
    return x >= 0 && y >= 0 && x < 8 && y < 8 && x + y <= t;
  };
  std::array<std::uint8_t, 64> table{};
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      int sx = x;
      int sy = y;
      if (!valid(x, y)) {
        if (valid(7 - y, 7 - x)) {
          sx = 7 - y;
          sy = 7 - x;
        } else if (valid(t - y, t - x)) {
          sx = t - y;
          sy = t - x;
        } else {
          while (!valid(sx, sy)) (sx >= sy ? sx : sy) -= 1;
        }
      }
      table[y * 8 + x] = static_cast<std::uint8_t>(sy * 8 + sx);
    }
  }
  return table;
}

// Fills invalid pixels ring by ring with the mean of already-filled
// 4-neighbors. Used for partial blocks that are not corner triangles.
Block fill_by_diffusion(const Block& block, const BlockValidity& valid) {
  Block out = block;
  BlockValidity filled = valid;
  bool any = std::any_of(valid.begin(), valid.end(), [](bool v) { return v; });
  if (!any) {
    out.fill(128.0);
    return out;
  }
  bool pending = true;
  while (pending) {
    pending = false;
    const BlockValidity snapshot = filled;
    const Block values = out;
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) {
        const int k = y * 8 + x;
        if (snapshot[k]) continue;
        double sum = 0.0;
        int n = 0;
        auto take = [&](int nx, int ny) {
          if (nx < 0 || ny < 0 || nx >= 8 || ny >= 8) return;
          if (!snapshot[ny * 8 + nx]) return;
          sum += values[ny * 8 + nx];
          ++n;
        };
        take(x - 1, y);
        take(x + 1, y);
        take(x, y - 1);
        take(x, y + 1);
        if (n > 0) {
          out[k] = sum / n;
          filled[k] = true;
        } else {
          pending = true;
        }
      }
    }
  }
  return out;
}

void write_header(std::vector<std::uint8_t>& out, const DctConfig& cfg, PlaneRole role) {
  out.push_back(static_cast<std::uint8_t>(cfg.quality));
  out.push_back(static_cast<std::uint8_t>(cfg.subsampling));
  out.push_back(static_cast<std::uint8_t>(role));
  out.push_back(cfg.skip_blank_blocks ? kFlagSkipBlank : 0);
}

}  // namespace

QuantTable quant_table(int quality, bool chroma) {
  if (quality < 1 || quality > 100) {
    throw ConfigError("DCT quality must be in 1..100, got " + std::to_string(quality));
  }
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  const auto& base = chroma ? jpeg::kChromaQuant : jpeg::kLumaQuant;
  QuantTable t{};
  for (int i = 0; i < 64; ++i) {
    t[i] = static_cast<std::uint16_t>(std::clamp((base[i] * scale + 50) / 100, 1, 255));
  }
  return t;
}

std::size_t BlockGrid::count(BlockClass c) const {
  return static_cast<std::size_t>(std::count(classes.begin(), classes.end(), c));
}

BlockGrid classify_blocks(const ShapeMask& mask) {
  BlockGrid g;
  g.cols = ceil8(mask.width());
  g.rows = ceil8(mask.height());
  g.classes.resize(static_cast<std::size_t>(g.cols) * g.rows);
  if (is_full(mask)) {
    std::fill(g.classes.begin(), g.classes.end(), BlockClass::kData);
    return g;
  }
  for (int by = 0; by < g.rows; ++by) {
    for (int bx = 0; bx < g.cols; ++bx) {
      int n = 0;
      for (int y = by * 8; y < std::min(by * 8 + 8, mask.height()); ++y) {
        for (int x = bx * 8; x < std::min(bx * 8 + 8, mask.width()); ++x) {
          n += mask.at(x, y) ? 1 : 0;
        }
      }
      g.classes[static_cast<std::size_t>(by) * g.cols + bx] =
          n == 0 ? BlockClass::kBlank : n == 64 ? BlockClass::kData : BlockClass::kBoundary;
    }
  }
  return g;
}

std::optional<std::array<std::uint8_t, 64>> mirror_table(const BlockValidity& valid) {
  static const auto canonical = [] {
    std::array<std::array<std::uint8_t, 64>, 14> c{};
    for (int t = 0; t < 14; ++t) c[t] = canonical_mirror(t);
    return c;
  }();

  if (std::all_of(valid.begin(), valid.end(), [](bool v) { return v; })) {
    std::array<std::uint8_t, 64> identity{};
    for (int k = 0; k < 64; ++k) identity[k] = static_cast<std::uint8_t>(k);
    return identity;
  }

  int apex = -1;
  for (int corner : {0, 7, 56, 63}) {
    if (valid[corner] && !valid[63 - corner]) {
      if (apex >= 0) return std::nullopt;
      apex = corner;
    }
  }
  if (apex < 0) return std::nullopt;
  const bool fx = (apex % 8) == 7;
  const bool fy = (apex / 8) == 7;
  auto to_block = [&](int x, int y) { return (fy ? 7 - y : y) * 8 + (fx ? 7 - x : x); };

  int t = -1;
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      if (valid[to_block(x, y)]) t = std::max(t, x + y);
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      if (valid[to_block(x, y)] != (x + y <= t)) return std::nullopt;
    }
  }

  std::array<std::uint8_t, 64> table{};
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const int src = canonical[t][y * 8 + x];
      table[to_block(x, y)] = static_cast<std::uint8_t>(to_block(src % 8, src / 8));
    }
  }
  return table;
}

Block pad_boundary_block(const Block& block, const BlockValidity& valid) {
  const auto table = mirror_table(valid);
  if (!table) throw Error("boundary block is not a corner triangle");
  Block out{};
  for (int k = 0; k < 64; ++k) out[k] = block[(*table)[k]];
  return out;
}

Block fdct8x8(const Block& in) {
  const auto& c = dct_basis();
  Block tmp{};
  Block out{};
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int x = 0; x < 8; ++x) s += c[u][x] * in[y * 8 + x];
      tmp[y * 8 + u] = s;
    }
  }
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int y = 0; y < 8; ++y) s += c[v][y] * tmp[y * 8 + u];
      out[v * 8 + u] = s;
    }
  }
  return out;
}

Block idct8x8(const Block& in) {
  const auto& c = dct_basis();
  Block tmp{};
  Block out{};
  for (int v = 0; v < 8; ++v) {
    for (int x = 0; x < 8; ++x) {
      double s = 0.0;
      for (int u = 0; u < 8; ++u) s += c[u][x] * in[v * 8 + u];
      tmp[v * 8 + x] = s;
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double s = 0.0;
      for (int v = 0; v < 8; ++v) s += c[v][y] * tmp[v * 8 + x];
      out[y * 8 + x] = s;
    }
  }
  return out;
}

DctStream dct_encode(const PlaneImage& plane, const ShapeMask& mask,
                     const DctConfig& cfg, PlaneRole role) {
  if (plane.width() != mask.width() || plane.height() != mask.height()) {
    throw ConfigError("DCT plane and mask sizes differ");
  }
  const QuantTable q = role == PlaneRole::kY ? cfg.luma_table() : cfg.chroma_table();
  const TableSet& huff = tables_for(role);
  const BlockGrid grid = classify_blocks(mask);
  const bool dense = is_full(mask);
  const int w = plane.width();
  const int h = plane.height();

  BitWriter out;
  int pred = 0;
  auto code_block = [&](const std::array<int, 64>& coef) {
    const int diff = coef[0] - pred;
    pred = coef[0];
    const int s = category(diff);
    put_symbol(out, huff.dc, static_cast<std::uint8_t>(s));
    put_value(out, diff, s);
    int run = 0;
    for (int k = 1; k < 64; ++k) {
      const int v = coef[jpeg::kZigZag[k]];
      if (v == 0) {
        ++run;
        continue;
      }
      for (; run > 15; run -= 16) put_symbol(out, huff.ac, kZrl);
      const int sv = category(v);
      put_symbol(out, huff.ac, static_cast<std::uint8_t>((run << 4) | sv));
      put_value(out, v, sv);
      run = 0;
    }
    if (run > 0) put_symbol(out, huff.ac, kEob);
  };

  for (int by = 0; by < grid.rows; ++by) {
    for (int bx = 0; bx < grid.cols; ++bx) {
      const BlockClass cls = grid.at(bx, by);
      if (cls == BlockClass::kBlank) {
        if (cfg.skip_blank_blocks) continue;
        std::array<int, 64> zero{};
        zero[0] = pred;
        code_block(zero);
        continue;
      }
      Block block{};
      BlockValidity valid{};
      for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
          const int x = bx * 8 + i;
          const int y = by * 8 + j;
          const int k = j * 8 + i;
          if (dense) {
            block[k] = plane.at(std::min(x, w - 1), std::min(y, h - 1));
            valid[k] = true;
          } else {
            valid[k] = x < w && y < h && mask.at(x, y);
            block[k] = valid[k] ? plane.at(x, y) : 0.0;
          }
        }
      }
      if (cls == BlockClass::kBoundary) {
        block = mirror_table(valid) ? pad_boundary_block(block, valid)
                                    : fill_by_diffusion(block, valid);
      }
      for (double& v : block) v -= 128.0;
      const Block f = fdct8x8(block);
      std::array<int, 64> coef{};
      for (int k = 0; k < 64; ++k) {
        coef[k] = static_cast<int>(std::lround(f[k] / q[k]));
        if (k > 0) coef[k] = std::clamp(coef[k], -kMaxAc, kMaxAc);
      }
      coef[0] = std::clamp(coef[0], std::max(-kMaxDc, pred - kMaxDc),
                           std::min(kMaxDc, pred + kMaxDc));
      code_block(coef);
    }
  }

  DctStream s;
  s.entropy_bits = out.bit_count();
  write_header(s.bytes, cfg, role);
  const auto data = out.finish(true);
  s.bytes.insert(s.bytes.end(), data.begin(), data.end());
  return s;
}

PlaneImage dct_decode(std::span<const std::uint8_t> bytes, const ShapeMask& mask) {
  if (bytes.size() < kDctPlaneHeaderBytes) throw DecodeError("truncated DCT header", 0);
  const int quality = bytes[0];
  if (quality < 1 || quality > 100) throw DecodeError("invalid DCT quality", 0);
  if (bytes[1] > 1) throw DecodeError("invalid subsampling id", 1);
  if (bytes[2] > 2) throw DecodeError("invalid plane role", 2);
  const auto role = static_cast<PlaneRole>(bytes[2]);
  const bool skip = (bytes[3] & kFlagSkipBlank) != 0;

  const QuantTable q = quant_table(quality, role != PlaneRole::kY);
  const TableSet& huff = tables_for(role);
  const BlockGrid grid = classify_blocks(mask);
  const int w = mask.width();
  const int h = mask.height();
  PlaneImage plane(w, h, 0.0);
  BlockDecoder in(bytes.subspan(kDctPlaneHeaderBytes), kDctPlaneHeaderBytes);

  int pred = 0;
  for (int by = 0; by < grid.rows; ++by) {
    for (int bx = 0; bx < grid.cols; ++bx) {
      const BlockClass cls = grid.at(bx, by);
      if (cls == BlockClass::kBlank && skip) continue;
      std::array<int, 64> coef{};
      const int s = in.symbol(huff.dc);
      if (s > 11) in.fail("invalid DC category");
      pred += in.value(s);
      coef[0] = pred;
      for (int k = 1; k < 64;) {
        const std::uint8_t sym = in.symbol(huff.ac);
        const int run = sym >> 4;
        const int size = sym & 15;
        if (size == 0) {
          if (sym == kEob) break;
          if (sym != kZrl) in.fail("invalid AC symbol");
          k += 16;
          continue;
        }
        k += run;
        if (k > 63) in.fail("AC run past end of block");
        coef[jpeg::kZigZag[k]] = in.value(size);
        ++k;
      }
      if (cls == BlockClass::kBlank) continue;
      Block f{};
      for (int k = 0; k < 64; ++k) f[k] = static_cast<double>(coef[k]) * q[k];
      const Block px = idct8x8(f);
      for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
          const int x = bx * 8 + i;
          const int y = by * 8 + j;
          if (x < w && y < h && mask.at(x, y)) plane.at(x, y) = px[j * 8 + i] + 128.0;
        }
      }
    }
  }
  return plane;
}

CodedContainer cai_dct_encode(const RgbImage& rgb, const DctConfig& cfg) {
  require_even_dims(rgb.width(), rgb.height(), "CAI input");
  const int w = rgb.width();
  const int h = rgb.height();
  const auto m = ConversionMatrix::jfif();
  PlaneImage y(w, h);
  PlaneImage cb(w, h);
  PlaneImage cr(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const auto ycc = m.to_ycbcr(rgb.at(i, j, Channel::kRed), rgb.at(i, j, Channel::kGreen),
                                  rgb.at(i, j, Channel::kBlue));
      y.at(i, j) = ycc[0];
      cb.at(i, j) = ycc[1];
      cr.at(i, j) = ycc[2];
    }
  }
  if (cfg.subsampling == Subsampling::k422) {
    PlaneImage cb2(w / 2, h);
    PlaneImage cr2(w / 2, h);
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w / 2; ++i) {
        cb2.at(i, j) = 0.5 * (cb.at(2 * i, j) + cb.at(2 * i + 1, j));
        cr2.at(i, j) = 0.5 * (cr.at(2 * i, j) + cr.at(2 * i + 1, j));
      }
    }
    cb = std::move(cb2);
    cr = std::move(cr2);
  }

  CodedContainer c;
  c.method = Method::kCai;
  c.coder = Coder::kDct;
  c.width = static_cast<std::uint32_t>(w);
  c.height = static_cast<std::uint32_t>(h);
  c.block_w = 2;
  c.block_h = 2;
  c.planes.push_back({PlaneRole::kY, dct_encode(y, ShapeMask::full(w, h), cfg, PlaneRole::kY).bytes});
  const auto chroma_mask = ShapeMask::full(cb.width(), cb.height());
  c.planes.push_back({PlaneRole::kCb, dct_encode(cb, chroma_mask, cfg, PlaneRole::kCb).bytes});
  c.planes.push_back({PlaneRole::kCr, dct_encode(cr, chroma_mask, cfg, PlaneRole::kCr).bytes});
  return c;
}

RgbImage cai_dct_decode(const CodedContainer& c) {
  const int w = static_cast<int>(c.width);
  const int h = static_cast<int>(c.height);
  require_even_dims(w, h, "CAI container");
  const auto& yp = c.plane(PlaneRole::kY).payload;
  const auto& cbp = c.plane(PlaneRole::kCb).payload;
  const auto& crp = c.plane(PlaneRole::kCr).payload;
  if (cbp.size() < kDctPlaneHeaderBytes) throw DecodeError("truncated DCT header", 0);
  const bool sub = cbp[1] == static_cast<std::uint8_t>(Subsampling::k422);
  const int cw = sub ? w / 2 : w;

  const PlaneImage y = dct_decode(yp, ShapeMask::full(w, h));
  const PlaneImage cb = dct_decode(cbp, ShapeMask::full(cw, h));
  const PlaneImage cr = dct_decode(crp, ShapeMask::full(cw, h));
  const auto m = ConversionMatrix::jfif();
  RgbImage out(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const int ci = sub ? i / 2 : i;
      const auto rgb = m.to_rgb(y.at(i, j), cb.at(ci, j), cr.at(ci, j));
      out.at(i, j, Channel::kRed) = std::clamp(rgb[0], 0.0, 255.0);
      out.at(i, j, Channel::kGreen) = std::clamp(rgb[1], 0.0, 255.0);
      out.at(i, j, Channel::kBlue) = std::clamp(rgb[2], 0.0, 255.0);
    }
  }
  return out;
}

}  // namespace cfacomp
