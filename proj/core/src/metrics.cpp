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

#include "cfacomp/metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "cfacomp/colorspace.hpp"
#include "cfacomp/error.hpp"

namespace cfacomp {
namespace {

// D65 reference white, Y normalized to 1.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;

double linearize(double v8) {
  const double c = v8 / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double kEps = 216.0 / 24389.0;
  constexpr double kKappa = 24389.0 / 27.0;
  return t > kEps ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

void require_same_size(const RgbImage& a, const RgbImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InvalidGeometry("metric inputs differ in size");
  }
}

}  // namespace

double psnr(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw InvalidGeometry("PSNR inputs differ in size");
  double sse = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(a.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

PsnrTriple psnr_components(const RgbImage& out, const RgbImage& ref) {
  require_same_size(out, ref);
  const auto m = ConversionMatrix::jfif();
  const std::size_t n = out.pixel_count();
  std::array<std::vector<double>, 3> a;
  std::array<std::vector<double>, 3> b;
  for (int c = 0; c < 3; ++c) {
    a[c].resize(n);
    b[c].resize(n);
  }
  const auto so = out.samples();
  const auto sr = ref.samples();
  for (std::size_t i = 0; i < n; ++i) {
    const auto yo = m.to_ycbcr(so[3 * i], so[3 * i + 1], so[3 * i + 2]);
    const auto yr = m.to_ycbcr(sr[3 * i], sr[3 * i + 1], sr[3 * i + 2]);
    for (int c = 0; c < 3; ++c) {
      a[c][i] = yo[c];
      b[c][i] = yr[c];
    }
  }
  return {psnr(a[0], b[0]), psnr(a[1], b[1]), psnr(a[2], b[2])};
}

std::array<double, 3> srgb_to_lab(double r, double g, double b) {
  const double rl = linearize(to_byte(r));
  const double gl = linearize(to_byte(g));
  const double bl = linearize(to_byte(b));
  const double x = 0.412453 * rl + 0.357580 * gl + 0.180423 * bl;
  const double y = 0.212671 * rl + 0.715160 * gl + 0.072169 * bl;
  const double z = 0.019334 * rl + 0.119193 * gl + 0.950227 * bl;
  const double fx = lab_f(x / kXn);
  const double fy = lab_f(y / kYn);
  const double fz = lab_f(z / kZn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double delta_e76(const std::array<double, 3>& rgb_a, const std::array<double, 3>& rgb_b) {
  const auto la = srgb_to_lab(rgb_a[0], rgb_a[1], rgb_a[2]);
  const auto lb = srgb_to_lab(rgb_b[0], rgb_b[1], rgb_b[2]);
  return std::hypot(la[0] - lb[0], la[1] - lb[1], la[2] - lb[2]);
}

double mean_delta_e(const RgbImage& out, const RgbImage& ref) {
  require_same_size(out, ref);
  const auto so = out.samples();
  const auto sr = ref.samples();
  const std::size_t n = out.pixel_count();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += delta_e76({so[3 * i], so[3 * i + 1], so[3 * i + 2]},
                     {sr[3 * i], sr[3 * i + 1], sr[3 * i + 2]});
  }
  return sum / static_cast<double>(n);
}

QualityReport evaluate(const RgbImage& out, const RgbImage& ref, std::size_t coded_bytes) {
  const auto p = psnr_components(out, ref);
  QualityReport q;
  q.psnr_y = p.y;
  q.psnr_cb = p.cb;
  q.psnr_cr = p.cr;
  q.mean_delta_e = mean_delta_e(out, ref);
  q.bytes = coded_bytes;
  q.compression_ratio =
      coded_bytes == 0 ? 0.0 : 3.0 * static_cast<double>(out.pixel_count()) / coded_bytes;
  return q;
}

}  // namespace cfacomp
