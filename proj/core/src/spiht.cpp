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

#include "cfacomp/spiht.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfacomp/bitio.hpp"
#include "cfacomp/error.hpp"

namespace cfacomp {
namespace {

constexpr int kMaxFracBits = 16;

struct ListEntry {
  std::uint32_t index;
  bool type_b;
  bool removed;
};

// Everything both sides derive from the mask alone.
struct TreeInfo {
  explicit TreeInfo(const CoeffPyramid& pyr)
      : tree(pyr.width(), pyr.height(), pyr.levels) {
    const std::size_t n = static_cast<std::size_t>(pyr.width()) * pyr.height();
    valid.resize(n);
    desc_any.assign(n, 0);
    gdesc_any.assign(n, 0);
    for (int y = 0; y < pyr.height(); ++y) {
      for (int x = 0; x < pyr.width(); ++x) {
        valid[static_cast<std::size_t>(y) * pyr.width() + x] = pyr.mask.at(x, y) ? 1 : 0;
      }
    }
    std::uint32_t kids[4];
    for (std::size_t i = n; i-- > 0;) {
      const int k = tree.children(static_cast<int>(i), kids);
      for (int j = 0; j < k; ++j) {
        desc_any[i] |= valid[kids[j]] | desc_any[kids[j]];
        gdesc_any[i] |= desc_any[kids[j]];
      }
    }
  }

  SpihtTree tree;
  std::vector<std::uint8_t> valid;
  std::vector<std::uint8_t> desc_any;
  std::vector<std::uint8_t> gdesc_any;
};

class EncoderIo {
 public:
  static constexpr bool kEncoding = true;
  explicit EncoderIo(std::size_t max_bits) : max_bits_(max_bits) {}
  bool bit(bool& b) {
    if (out_.bit_count() >= max_bits_) return false;
    out_.put_bit(b);
    return true;
  }
  BitWriter& writer() { return out_; }

 private:
  BitWriter out_;
  std::size_t max_bits_;
};

class DecoderIo {
 public:
  static constexpr bool kEncoding = false;
  DecoderIo(std::span<const std::uint8_t> data, std::size_t bits) : in_(data), bits_(bits) {}
  bool bit(bool& b) {
    if (in_.bit_position() >= bits_) return false;
    return in_.get_bit(b);
  }

 private:
  BitReader in_;
  std::size_t bits_;
};

// Encoder-side magnitudes; unused by the decoder.
struct Magnitudes {
  std::vector<std::uint64_t> m;
  std::vector<std::uint8_t> negative;
  std::vector<std::uint64_t> dmax;
  std::vector<std::uint64_t> gmax;
};

// Decoder-side reconstruction in units of 2^-frac_bits.
struct Reconstruction {
  std::vector<double> magnitude;
  std::vector<std::uint8_t> negative;
};

// The sorting/refinement schedule shared by encoder and decoder. The
// encoder computes each bit from `mag` before handing it to `io`; the
// decoder receives it from `io`. Returns when bits run out or after plane 0.
template <typename Io>
void run_passes(const TreeInfo& info, int n_max, Io& io, const Magnitudes* mag,
                Reconstruction* rec) {
  const SpihtTree& tree = info.tree;
  const int w = tree.width();
  std::vector<std::uint32_t> lip;
  std::vector<std::uint32_t> lsp;
  std::vector<ListEntry> lis;
  for (int r = 0; r < tree.ll_height(); ++r) {
    for (int c = 0; c < tree.ll_width(); ++c) {
      const auto i = static_cast<std::uint32_t>(r * w + c);
      if (info.valid[i]) lip.push_back(i);
    }
  }
  for (int r = 0; r < tree.ll_height(); ++r) {
    for (int c = 0; c < tree.ll_width(); ++c) {
      const auto i = static_cast<std::uint32_t>(r * w + c);
      if (info.desc_any[i]) lis.push_back({i, false, false});
    }
  }

  std::uint32_t kids[4];
  for (int n = n_max; n >= 0; --n) {
    const std::uint64_t thr = std::uint64_t{1} << n;
    const double mid = 1.5 * static_cast<double>(thr);
    const std::size_t refine_count = lsp.size();

    // Significance of one coefficient, plus its sign when significant.
    // Returns false when the stream ends.
    auto test_coeff = [&](std::uint32_t i, bool& sig) {
      if constexpr (Io::kEncoding) sig = mag->m[i] >= thr;
      if (!io.bit(sig)) return false;
      if (!sig) return true;
      bool neg = false;
      if constexpr (Io::kEncoding) neg = mag->negative[i] != 0;
      if (!io.bit(neg)) return false;
      if constexpr (!Io::kEncoding) {
        rec->magnitude[i] = mid;
        rec->negative[i] = neg ? 1 : 0;
      }
      lsp.push_back(i);
      return true;
    };

    std::size_t keep = 0;
    for (std::size_t k = 0; k < lip.size(); ++k) {
      bool sig = false;
      if (!test_coeff(lip[k], sig)) return;
      if (!sig) lip[keep++] = lip[k];
    }
    lip.resize(keep);

    for (std::size_t k = 0; k < lis.size(); ++k) {
      const ListEntry e = lis[k];
      bool sig = false;
      if (!e.type_b) {
        if constexpr (Io::kEncoding) sig = mag->dmax[e.index] >= thr;
        if (!io.bit(sig)) return;
        if (!sig) continue;
        const int nk = tree.children(static_cast<int>(e.index), kids);
        for (int j = 0; j < nk; ++j) {
          if (!info.valid[kids[j]]) continue;
          bool child_sig = false;
          if (!test_coeff(kids[j], child_sig)) return;
          if (!child_sig) lip.push_back(kids[j]);
        }
        lis[k].removed = true;
        if (info.gdesc_any[e.index]) lis.push_back({e.index, true, false});
      } else {
        if constexpr (Io::kEncoding) sig = mag->gmax[e.index] >= thr;
        if (!io.bit(sig)) return;
        if (!sig) continue;
        lis[k].removed = true;
        const int nk = tree.children(static_cast<int>(e.index), kids);
        for (int j = 0; j < nk; ++j) {
          if (info.desc_any[kids[j]]) lis.push_back({kids[j], false, false});
        }
      }
    }
    std::erase_if(lis, [](const ListEntry& e) { return e.removed; });

    for (std::size_t k = 0; k < refine_count; ++k) {
      const std::uint32_t i = lsp[k];
      bool b = false;
      if constexpr (Io::kEncoding) b = ((mag->m[i] >> n) & 1u) != 0;
      if (!io.bit(b)) return;
      if constexpr (!Io::kEncoding) {
        const double step = 0.5 * static_cast<double>(thr);
        rec->magnitude[i] += b ? step : -step;
      }
    }
  }
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

int round_up(int v, int m) { return (v + m - 1) / m * m; }

ShapeMask padded_mask(const ShapeMask& mask, int pw, int ph) {
  ShapeMask out(pw, ph, false);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) out.set(x, y, mask.at(x, y));
  }
  return out;
}

}  // namespace

SpihtTree::SpihtTree(int width, int height, int levels)
    : width_(width), height_(height) {
  const int unit = 1 << (levels + 1);
  if (levels < 1 || width % unit != 0 || height % unit != 0) {
    throw ConfigError("SPIHT plane " + std::to_string(width) + "x" + std::to_string(height) +
                      " is not a multiple of " + std::to_string(unit));
  }
  wl_ = width >> levels;
  hl_ = height >> levels;
}

int SpihtTree::children(int index, std::uint32_t out[4]) const {
  const int r = index / width_;
  const int c = index % width_;
  int br = 0;
  int bc = 0;
  if (r < hl_ && c < wl_) {
    const int gr = r & ~1;
    const int gc = c & ~1;
    const bool odd_r = (r & 1) != 0;
    const bool odd_c = (c & 1) != 0;
    if (!odd_r && !odd_c) return 0;
    br = gr + (odd_r ? hl_ : 0);
    bc = gc + (odd_c ? wl_ : 0);
  } else {
    br = 2 * r;
    bc = 2 * c;
    if (br >= height_ || bc >= width_) return 0;
  }
  out[0] = static_cast<std::uint32_t>(br * width_ + bc);
  out[1] = out[0] + 1;
  out[2] = static_cast<std::uint32_t>((br + 1) * width_ + bc);
  out[3] = out[2] + 1;
  return 4;
}

int blank_root_groups(const ShapeMask& coeff_mask, int levels) {
  CoeffPyramid pyr;
  pyr.coeffs = PlaneImage(coeff_mask.width(), coeff_mask.height());
  pyr.mask = coeff_mask;
  pyr.levels = levels;
  const TreeInfo info(pyr);
  const int w = coeff_mask.width();
  int blank = 0;
  for (int r = 0; r < info.tree.ll_height(); r += 2) {
    for (int c = 0; c < info.tree.ll_width(); c += 2) {
      bool any = false;
      for (int i : {r * w + c, r * w + c + 1, (r + 1) * w + c, (r + 1) * w + c + 1}) {
        any = any || info.valid[i] != 0 || info.desc_any[i] != 0;
      }
      blank += any ? 0 : 1;
    }
  }
  return blank;
}

std::vector<std::uint8_t> spiht_encode(const CoeffPyramid& pyr, std::size_t budget_bytes,
                                       int frac_bits) {
  if (budget_bytes < kSpihtHeaderBytes) {
    throw ConfigError("SPIHT budget of " + std::to_string(budget_bytes) +
                      " bytes cannot hold the header");
  }
  if (frac_bits < 0 || frac_bits > kMaxFracBits) {
    throw ConfigError("SPIHT frac_bits must be in 0.." + std::to_string(kMaxFracBits));
  }
  const TreeInfo info(pyr);
  const std::size_t n = info.valid.size();
  const int w = pyr.width();
  Magnitudes mag;
  mag.m.assign(n, 0);
  mag.negative.assign(n, 0);
  mag.dmax.assign(n, 0);
  mag.gmax.assign(n, 0);
  const double scale = std::ldexp(1.0, frac_bits);
  std::uint64_t top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!info.valid[i]) continue;
    const double c = pyr.coeffs.at(static_cast<int>(i % w), static_cast<int>(i / w));
    mag.m[i] = static_cast<std::uint64_t>(std::floor(std::fabs(c) * scale));
    mag.negative[i] = c < 0 ? 1 : 0;
    top = std::max(top, mag.m[i]);
  }
  std::uint32_t kids[4];
  for (std::size_t i = n; i-- > 0;) {
    const int k = info.tree.children(static_cast<int>(i), kids);
    for (int j = 0; j < k; ++j) {
      mag.dmax[i] = std::max({mag.dmax[i], mag.m[kids[j]], mag.dmax[kids[j]]});
      mag.gmax[i] = std::max(mag.gmax[i], mag.dmax[kids[j]]);
    }
  }
  int n_max = -1;
  while (top >> (n_max + 1) != 0) ++n_max;

  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(pyr.levels));
  out.push_back(static_cast<std::uint8_t>(WaveletFilter::kCdf97));
  out.push_back(n_max < 0 ? kSpihtEmpty : static_cast<std::uint8_t>(n_max));
  out.push_back(static_cast<std::uint8_t>(frac_bits));
  put_u32(out, static_cast<std::uint32_t>(budget_bytes));
  if (n_max < 0) {
    put_u32(out, 0);
    return out;
  }
  EncoderIo io((budget_bytes - kSpihtHeaderBytes) * 8);
  run_passes(info, n_max, io, &mag, nullptr);
  const std::size_t bits = io.writer().bit_count();
  put_u32(out, static_cast<std::uint32_t>(bits));
  const auto data = io.writer().finish(false);
  out.insert(out.end(), data.begin(), data.end());
  return out;
}

void spiht_decode(std::span<const std::uint8_t> bytes, CoeffPyramid& pyr) {
  if (bytes.size() < kSpihtHeaderBytes) throw DecodeError("truncated SPIHT header", 0);
  if (bytes[0] != pyr.levels) throw DecodeError("SPIHT level count mismatch", 0);
  if (bytes[1] != static_cast<std::uint8_t>(WaveletFilter::kCdf97)) {
    throw DecodeError("unknown wavelet filter", 1);
  }
  const int frac_bits = bytes[3];
  if (frac_bits > kMaxFracBits) throw DecodeError("invalid SPIHT precision", 3);
  std::fill(pyr.coeffs.samples().begin(), pyr.coeffs.samples().end(), 0.0);
  if (bytes[2] == kSpihtEmpty) return;
  const int n_max = bytes[2];
  if (n_max >= 63) throw DecodeError("invalid SPIHT bit plane", 2);

  const TreeInfo info(pyr);
  const auto data = bytes.subspan(kSpihtHeaderBytes);
  const std::size_t bits = std::min<std::size_t>(get_u32(bytes, 8), data.size() * 8);
  DecoderIo io(data, bits);
  Reconstruction rec;
  rec.magnitude.assign(info.valid.size(), 0.0);
  rec.negative.assign(info.valid.size(), 0);
  run_passes(info, n_max, io, nullptr, &rec);

  const int w = pyr.width();
  const double scale = std::ldexp(1.0, -frac_bits);
  for (std::size_t i = 0; i < rec.magnitude.size(); ++i) {
    const double v = rec.magnitude[i] * scale;
    pyr.coeffs.at(static_cast<int>(i % w), static_cast<int>(i / w)) = rec.negative[i] ? -v : v;
  }
}

int effective_levels(int width, int height, int requested) {
  if (requested < 1) throw ConfigError("wavelet levels must be at least 1");
  return std::max(1, std::min(requested, max_levels(width, height) - 1));
}

std::vector<std::uint8_t> spiht_encode_plane(const PlaneImage& plane, const ShapeMask& mask,
                                             const SpihtConfig& cfg, std::size_t budget_bytes) {
  if (plane.width() != mask.width() || plane.height() != mask.height()) {
    throw ConfigError("SPIHT plane and mask sizes differ");
  }
  const int levels = effective_levels(plane.width(), plane.height(), cfg.levels);
  const int unit = 1 << (levels + 1);
  const int pw = round_up(plane.width(), unit);
  const int ph = round_up(plane.height(), unit);
  PlaneImage padded(pw, ph, 0.0);
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) padded.at(x, y) = plane.at(x, y);
  }
  const auto pyr = sadwt_forward(padded, padded_mask(mask, pw, ph), {WaveletFilter::kCdf97, levels});
  return spiht_encode(pyr, budget_bytes, cfg.frac_bits);
}

PlaneImage spiht_decode_plane(std::span<const std::uint8_t> bytes, const ShapeMask& mask) {
  if (bytes.size() < kSpihtHeaderBytes) throw DecodeError("truncated SPIHT header", 0);
  const int levels = bytes[0];
  if (levels != effective_levels(mask.width(), mask.height(), std::max(levels, 1))) {
    throw DecodeError("SPIHT level count does not fit the plane", 0);
  }
  const int unit = 1 << (levels + 1);
  const int pw = round_up(mask.width(), unit);
  const int ph = round_up(mask.height(), unit);
  CoeffPyramid pyr = empty_pyramid(padded_mask(mask, pw, ph), levels);
  spiht_decode(bytes, pyr);
  const PlaneImage full = sadwt_inverse(pyr);
  PlaneImage out(mask.width(), mask.height(), 0.0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) out.at(x, y) = full.at(x, y);
  }
  return out;
}

RateSplit allocate_rates(std::size_t total, std::size_t header_bytes, double y_fraction) {
  if (!(y_fraction >= 0.0 && y_fraction <= 1.0)) {
    throw ConfigError("luma fraction must be in [0, 1]");
  }
  if (total < 3 * header_bytes) {
    throw ConfigError("budget of " + std::to_string(total) +
                      " bytes cannot hold three plane headers");
  }
  const std::size_t avail = total - 3 * header_bytes;
  const auto y = static_cast<std::size_t>(std::llround(static_cast<double>(avail) * y_fraction));
  const std::size_t rest = avail - std::min(y, avail);
  RateSplit s;
  s.y = header_bytes + std::min(y, avail);
  s.cb = header_bytes + rest / 2;
  s.cr = header_bytes + rest - rest / 2;
  return s;
}

}  // namespace cfacomp
