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

#include "cfacomp/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cfacomp/error.hpp"

namespace cfacomp {
namespace {

constexpr double kAlpha = -1.586134342059924;
constexpr double kBeta = -0.052980118572961;
constexpr double kGamma = 0.882911075530934;
constexpr double kDelta = 0.443506852043971;
constexpr double kK = 1.230174104914001;
constexpr double kLowScale = std::numbers::sqrt2 / kK;
constexpr double kHighScale = kK / std::numbers::sqrt2;

// Symmetric (whole-sample) extension.
double ext(std::span<const double> x, int k) {
  const int n = static_cast<int>(x.size());
  if (k < 0) k = -k;
  if (k >= n) k = 2 * (n - 1) - k;
  return x[static_cast<std::size_t>(k)];
}

void lift_step(std::span<double> x, int parity, double c) {
  const int n = static_cast<int>(x.size());
  for (int k = parity; k < n; k += 2) x[k] += c * (ext(x, k - 1) + ext(x, k + 1));
}

// A contiguous run [start, start + length) on one line.
struct Run {
  int start = 0;
  int length = 0;
};

// Samples at even positions are low-pass, odd ones high-pass; low output i
// of a run goes to (start + 1) / 2 + i, high output j to half + start / 2 + j.
int low_count(const Run& r) {
  return (r.start & 1) == 0 ? (r.length + 1) / 2 : r.length / 2;
}

int band_index(const Run& r, int i, int half) {
  const int nl = low_count(r);
  return i < nl ? (r.start + 1) / 2 + i : half + r.start / 2 + (i - nl);
}

template <typename Valid>
Run find_run(int extent, Valid valid, const char* what, int line) {
  int first = -1;
  int last = -1;
  for (int i = 0; i < extent; ++i) {
    if (!valid(i)) continue;
    if (first < 0) first = i;
    last = i;
  }
  if (first < 0) return {};
  for (int i = first; i <= last; ++i) {
    if (!valid(i)) {
      throw UnsupportedShape(std::string("non-contiguous ") + what + " " +
                             std::to_string(line));
    }
  }
  return {first, last - first + 1};
}

struct LevelShape {
  int lw = 0;
  int lh = 0;
  ShapeMask before_rows;
  ShapeMask before_cols;
};

// Applies one level of row splitting to a mask, returning the row runs.
ShapeMask split_rows(const ShapeMask& in, int lw, int lh, std::vector<Run>& runs) {
  ShapeMask out = in;
  const int cw = (lw + 1) / 2;
  runs.assign(static_cast<std::size_t>(lh), Run{});
  for (int y = 0; y < lh; ++y) {
    const Run r = find_run(lw, [&](int x) { return in.at(x, y); }, "row", y);
    runs[y] = r;
    for (int x = 0; x < lw; ++x) out.set(x, y, false);
    for (int i = 0; i < r.length; ++i) out.set(band_index(r, i, cw), y, true);
  }
  return out;
}

ShapeMask split_cols(const ShapeMask& in, int lw, int lh, std::vector<Run>& runs) {
  ShapeMask out = in;
  const int ch = (lh + 1) / 2;
  runs.assign(static_cast<std::size_t>(lw), Run{});
  for (int x = 0; x < lw; ++x) {
    const Run r = find_run(lh, [&](int y) { return in.at(x, y); }, "column", x);
    runs[x] = r;
    for (int y = 0; y < lh; ++y) out.set(x, y, false);
    for (int i = 0; i < r.length; ++i) out.set(x, band_index(r, i, ch), true);
  }
  return out;
}

void check_levels(int w, int h, int levels) {
  const int limit = max_levels(w, h);
  if (levels < 1 || levels > limit) {
    throw ConfigError("wavelet levels must be in 1.." + std::to_string(limit) +
                      " for a " + std::to_string(w) + "x" + std::to_string(h) +
                      " plane, got " + std::to_string(levels));
  }
}

std::vector<LevelShape> level_shapes(const ShapeMask& mask, int levels, ShapeMask* final_mask) {
  std::vector<LevelShape> shapes;
  ShapeMask cur = mask;
  int lw = mask.width();
  int lh = mask.height();
  std::vector<Run> runs;
  for (int l = 0; l < levels; ++l) {
    LevelShape s;
    s.lw = lw;
    s.lh = lh;
    s.before_rows = cur;
    s.before_cols = split_rows(cur, lw, lh, runs);
    cur = split_cols(s.before_cols, lw, lh, runs);
    shapes.push_back(std::move(s));
    lw = (lw + 1) / 2;
    lh = (lh + 1) / 2;
  }
  if (final_mask != nullptr) *final_mask = std::move(cur);
  return shapes;
}

// Scratch gather/scatter helpers for one run along a line.
template <typename Get>
void gather(std::vector<double>& buf, const Run& r, Get get) {
  buf.resize(static_cast<std::size_t>(r.length));
  for (int i = 0; i < r.length; ++i) buf[i] = get(r.start + i);
}

}  // namespace

int max_levels(int width, int height) {
  int m = std::min(width, height);
  int l = 0;
  while (m >= 2) {
    m /= 2;
    ++l;
  }
  return l;
}

void lift_forward(std::span<double> x, int parity) {
  const std::size_t n = x.size();
  if (n == 0) return;
  const int lo = parity & 1;  // index of the first low-pass sample
  const int hi = 1 - lo;
  if (n == 1) {
    x[0] *= std::numbers::sqrt2;
    return;
  }
  lift_step(x, hi, kAlpha);
  lift_step(x, lo, kBeta);
  lift_step(x, hi, kGamma);
  lift_step(x, lo, kDelta);
  std::vector<double> tmp;
  tmp.reserve(n);
  for (std::size_t k = static_cast<std::size_t>(lo); k < n; k += 2) tmp.push_back(x[k] * kLowScale);
  for (std::size_t k = static_cast<std::size_t>(hi); k < n; k += 2) tmp.push_back(x[k] * kHighScale);
  std::copy(tmp.begin(), tmp.end(), x.begin());
}

void lift_inverse(std::span<double> x, int parity) {
  const std::size_t n = x.size();
  if (n == 0) return;
  const int lo = parity & 1;
  const int hi = 1 - lo;
  if (n == 1) {
    x[0] /= std::numbers::sqrt2;
    return;
  }
  std::vector<double> tmp(n);
  std::size_t i = 0;
  for (std::size_t k = static_cast<std::size_t>(lo); k < n; k += 2) tmp[k] = x[i++] / kLowScale;
  for (std::size_t k = static_cast<std::size_t>(hi); k < n; k += 2) tmp[k] = x[i++] / kHighScale;
  std::copy(tmp.begin(), tmp.end(), x.begin());
  lift_step(x, lo, -kDelta);
  lift_step(x, hi, -kGamma);
  lift_step(x, lo, -kBeta);
  lift_step(x, hi, -kAlpha);
}

ShapeMask sadwt_mask(const ShapeMask& mask, int levels) {
  check_levels(mask.width(), mask.height(), levels);
  ShapeMask out;
  level_shapes(mask, levels, &out);
  return out;
}

CoeffPyramid sadwt_forward(const PlaneImage& plane, const ShapeMask& mask,
                           const WaveletConfig& cfg) {
  if (plane.width() != mask.width() || plane.height() != mask.height()) {
    throw ConfigError("wavelet plane and mask sizes differ");
  }
  check_levels(plane.width(), plane.height(), cfg.levels);
  CoeffPyramid pyr;
  pyr.levels = cfg.levels;
  pyr.coeffs = PlaneImage(plane.width(), plane.height(), 0.0);
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      if (mask.at(x, y)) pyr.coeffs.at(x, y) = plane.at(x, y);
    }
  }
  pyr.shape = mask;
  PlaneImage& c = pyr.coeffs;
  const auto shapes = level_shapes(mask, cfg.levels, &pyr.mask);
  std::vector<Run> runs;
  std::vector<double> buf;
  for (const auto& s : shapes) {
    const int cw = (s.lw + 1) / 2;
    const int ch = (s.lh + 1) / 2;
    split_rows(s.before_rows, s.lw, s.lh, runs);
    for (int y = 0; y < s.lh; ++y) {
      const Run r = runs[y];
      if (r.length == 0) continue;
      gather(buf, r, [&](int x) { return c.at(x, y); });
      lift_forward(buf, r.start & 1);
      for (int x = r.start; x < r.start + r.length; ++x) c.at(x, y) = 0.0;
      for (int i = 0; i < r.length; ++i) c.at(band_index(r, i, cw), y) = buf[i];
    }
    split_cols(s.before_cols, s.lw, s.lh, runs);
    for (int x = 0; x < s.lw; ++x) {
      const Run r = runs[x];
      if (r.length == 0) continue;
      gather(buf, r, [&](int y) { return c.at(x, y); });
      lift_forward(buf, r.start & 1);
      for (int y = r.start; y < r.start + r.length; ++y) c.at(x, y) = 0.0;
      for (int i = 0; i < r.length; ++i) c.at(x, band_index(r, i, ch)) = buf[i];
    }
  }
  return pyr;
}

CoeffPyramid empty_pyramid(const ShapeMask& shape, int levels) {
  CoeffPyramid pyr;
  pyr.levels = levels;
  pyr.coeffs = PlaneImage(shape.width(), shape.height(), 0.0);
  pyr.mask = sadwt_mask(shape, levels);
  pyr.shape = shape;
  return pyr;
}

PlaneImage sadwt_inverse(const CoeffPyramid& pyr) {
  check_levels(pyr.width(), pyr.height(), pyr.levels);
  if (pyr.shape.width() != pyr.width() || pyr.shape.height() != pyr.height()) {
    throw ConfigError("pyramid shape and coefficient sizes differ");
  }
  PlaneImage c = pyr.coeffs;
  const auto shapes = level_shapes(pyr.shape, pyr.levels, nullptr);
  std::vector<Run> runs;
  std::vector<double> buf;
  for (auto it = shapes.rbegin(); it != shapes.rend(); ++it) {
    const auto& s = *it;
    const int cw = (s.lw + 1) / 2;
    const int ch = (s.lh + 1) / 2;
    split_cols(s.before_cols, s.lw, s.lh, runs);
    for (int x = 0; x < s.lw; ++x) {
      const Run r = runs[x];
      if (r.length == 0) continue;
      buf.resize(static_cast<std::size_t>(r.length));
      for (int i = 0; i < r.length; ++i) {
        const int y = band_index(r, i, ch);
        buf[i] = c.at(x, y);
        c.at(x, y) = 0.0;
      }
      lift_inverse(buf, r.start & 1);
      for (int i = 0; i < r.length; ++i) c.at(x, r.start + i) = buf[i];
    }
    split_rows(s.before_rows, s.lw, s.lh, runs);
    for (int y = 0; y < s.lh; ++y) {
      const Run r = runs[y];
      if (r.length == 0) continue;
      buf.resize(static_cast<std::size_t>(r.length));
      for (int i = 0; i < r.length; ++i) {
        const int x = band_index(r, i, cw);
        buf[i] = c.at(x, y);
        c.at(x, y) = 0.0;
      }
      lift_inverse(buf, r.start & 1);
      for (int i = 0; i < r.length; ++i) c.at(r.start + i, y) = buf[i];
    }
  }
  for (int y = 0; y < c.height(); ++y) {
    for (int x = 0; x < c.width(); ++x) {
      if (!pyr.shape.at(x, y)) c.at(x, y) = 0.0;
    }
  }
  return c;
}

CoeffPyramid dwt_forward(const PlaneImage& plane, const WaveletConfig& cfg) {
  return sadwt_forward(plane, ShapeMask::full(plane.width(), plane.height()), cfg);
}

PlaneImage dwt_inverse(const CoeffPyramid& pyr) { return sadwt_inverse(pyr); }

}  // namespace cfacomp
