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

#include "cfacomp/demosaic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cfacomp {
namespace {

constexpr std::array<Channel, 3> kChannels = {Channel::kRed, Channel::kGreen,
                                              Channel::kBlue};

// Smallest green value used as a hue denominator.
constexpr double kHueFloor = 1.0;

Rect whole(const BayerImage& cfa) { return {0, 0, cfa.width(), cfa.height()}; }

double clamp255(double v) { return std::clamp(v, 0.0, 255.0); }

// Copies native samples into an otherwise zero image.
RgbImage natives(const BayerImage& cfa) {
  RgbImage out(cfa.width(), cfa.height());
  for (int y = 0; y < cfa.height(); ++y)
    for (int x = 0; x < cfa.width(); ++x)
      out.at(x, y, cfa.channel(x, y)) = cfa.at(x, y);
  return out;
}

// Mean of f(nx, ny) over the bilinear neighbors of (x, y) for `target`.
template <typename F>
double neighbor_mean(int x, int y, Channel target, const Rect& r, F&& f) {
  double sum = 0.0;
  int n = 0;
  for_each_bilinear_neighbor(x, y, target, r, [&](int nx, int ny) {
    sum += f(nx, ny);
    ++n;
  });
  return n > 0 ? sum / n : 0.0;
}

RgbImage bilinear_unclamped(const BayerImage& cfa) {
  const Rect r = whole(cfa);
  RgbImage out = natives(cfa);
  for (int y = 0; y < cfa.height(); ++y) {
    for (int x = 0; x < cfa.width(); ++x) {
      for (Channel c : kChannels) {
        if (c == cfa.channel(x, y)) continue;
        out.at(x, y, c) = neighbor_mean(
            x, y, c, r, [&](int nx, int ny) { return cfa.at(nx, ny); });
      }
    }
  }
  return out;
}

// Mean over the same-color samples two pixels away along one axis.
double second_neighbor_mean(const BayerImage& cfa, int x, int y, int dx,
                            int dy, bool& any) {
  double sum = 0.0;
  int n = 0;
  for (int s : {-2, 2}) {
    int nx = x + s * dx, ny = y + s * dy;
    if (nx >= 0 && nx < cfa.width() && ny >= 0 && ny < cfa.height()) {
      sum += cfa.at(nx, ny);
      ++n;
    }
  }
  any = n > 0;
  return n > 0 ? sum / n : 0.0;
}

double median_of(std::array<double, 9>& v, int n) {
  auto mid = v.begin() + n / 2;
  std::nth_element(v.begin(), mid, v.begin() + n);
  if (n & 1) return *mid;
  double hi = *mid;
  double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(InterpMethod m) {
  switch (m) {
    case InterpMethod::kBilinear: return "bilinear";
    case InterpMethod::kHue: return "hue";
    case InterpMethod::kGradient: return "gradient";
    case InterpMethod::kMedian: return "median";
  }
  return "unknown";
}

std::optional<InterpMethod> parse_interp(std::string_view name) {
  for (auto m : {InterpMethod::kBilinear, InterpMethod::kHue,
                 InterpMethod::kGradient, InterpMethod::kMedian}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

RgbImage demosaic_bilinear(const BayerImage& cfa) {
  RgbImage out = bilinear_unclamped(cfa);
  for (int y = 0; y < cfa.height(); ++y)
    for (int x = 0; x < cfa.width(); ++x)
      for (Channel c : kChannels)
        if (c != cfa.channel(x, y)) out.at(x, y, c) = clamp255(out.at(x, y, c));
  return out;
}

RgbImage demosaic_hue(const BayerImage& cfa) {
  const Rect r = whole(cfa);
  RgbImage out = natives(cfa);
  // Green first; it is the hue reference.
  for (int y = 0; y < cfa.height(); ++y)
    for (int x = 0; x < cfa.width(); ++x)
      if (!cfa.is_green(x, y))
        out.at(x, y, Channel::kGreen) =
            clamp255(neighbor_mean(x, y, Channel::kGreen, r, [&](int nx, int ny) {
              return cfa.at(nx, ny);
            }));
  for (int y = 0; y < cfa.height(); ++y) {
    for (int x = 0; x < cfa.width(); ++x) {
      const double g = out.at(x, y, Channel::kGreen);
      for (Channel c : {Channel::kRed, Channel::kBlue}) {
        if (c == cfa.channel(x, y)) continue;
        double ratio = neighbor_mean(x, y, c, r, [&](int nx, int ny) {
          return cfa.at(nx, ny) /
                 std::max(out.at(nx, ny, Channel::kGreen), kHueFloor);
        });
        out.at(x, y, c) = clamp255(g * ratio);
      }
    }
  }
  return out;
}

RgbImage demosaic_gradient(const BayerImage& cfa) {
  const Rect r = whole(cfa);
  RgbImage out = natives(cfa);
  for (int y = 0; y < cfa.height(); ++y) {
    for (int x = 0; x < cfa.width(); ++x) {
      if (cfa.is_green(x, y)) continue;
      const double center = cfa.at(x, y);
      bool has_h = false, has_v = false;
      double h = second_neighbor_mean(cfa, x, y, 1, 0, has_h);
      double v = second_neighbor_mean(cfa, x, y, 0, 1, has_v);
      double grad_h = has_h ? std::abs(center - h) : 0.0;
      double grad_v = has_v ? std::abs(center - v) : 0.0;
      double sum = 0.0;
      int n = 0;
      auto take = [&](int nx, int ny) {
        if (r.contains(nx, ny)) {
          sum += cfa.at(nx, ny);
          ++n;
        }
      };
      if (grad_h <= grad_v) {
        take(x - 1, y);
        take(x + 1, y);
      }
      if (grad_v <= grad_h) {
        take(x, y - 1);
        take(x, y + 1);
      }
      out.at(x, y, Channel::kGreen) = n > 0 ? clamp255(sum / n) : 0.0;
    }
  }
  for (int y = 0; y < cfa.height(); ++y) {
    for (int x = 0; x < cfa.width(); ++x) {
      const double g = out.at(x, y, Channel::kGreen);
      for (Channel c : {Channel::kRed, Channel::kBlue}) {
        if (c == cfa.channel(x, y)) continue;
        double diff = neighbor_mean(x, y, c, r, [&](int nx, int ny) {
          return cfa.at(nx, ny) - out.at(nx, ny, Channel::kGreen);
        });
        out.at(x, y, c) = clamp255(g + diff);
      }
    }
  }
  return out;
}

RgbImage demosaic_median(const BayerImage& cfa) {
  const RgbImage first = bilinear_unclamped(cfa);
  RgbImage out = first;
  std::array<double, 9> diffs{};
  for (int y = 0; y < cfa.height(); ++y) {
    for (int x = 0; x < cfa.width(); ++x) {
      const Channel own = cfa.channel(x, y);
      for (Channel c : kChannels) {
        if (c == own) continue;
        int n = 0;
        for (int yy = std::max(0, y - 1); yy <= std::min(cfa.height() - 1, y + 1); ++yy)
          for (int xx = std::max(0, x - 1); xx <= std::min(cfa.width() - 1, x + 1); ++xx)
            diffs[n++] = first.at(xx, yy, c) - first.at(xx, yy, own);
        out.at(x, y, c) = clamp255(cfa.at(x, y) + median_of(diffs, n));
      }
    }
  }
  return out;
}

RgbImage demosaic(const BayerImage& cfa, InterpMethod method) {
  switch (method) {
    case InterpMethod::kBilinear: return demosaic_bilinear(cfa);
    case InterpMethod::kHue: return demosaic_hue(cfa);
    case InterpMethod::kGradient: return demosaic_gradient(cfa);
    case InterpMethod::kMedian: return demosaic_median(cfa);
  }
  throw ConfigError("unknown interpolation method");
}

}  // namespace cfacomp
