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

// Quality metrics against the reference (demosaiced, uncompressed) image.

#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "cfacomp/image.hpp"

namespace cfacomp {

struct PsnrTriple {
  double y = 0.0;
  double cb = 0.0;
  double cr = 0.0;
};

// 10 log10(255^2 / MSE); +inf for identical inputs.
double psnr(std::span<const double> a, std::span<const double> b);

// Both images converted to full-resolution YCbCr with the JFIF matrix.
// Throws InvalidGeometry when sizes differ.
PsnrTriple psnr_components(const RgbImage& out, const RgbImage& ref);

// sRGB (D65) to CIELAB; inputs are rounded and clamped to 8 bits first.
std::array<double, 3> srgb_to_lab(double r, double g, double b);

// CIE76 color difference of two RGB triples.
double delta_e76(const std::array<double, 3>& rgb_a, const std::array<double, 3>& rgb_b);

double mean_delta_e(const RgbImage& out, const RgbImage& ref);

struct QualityReport {
  double psnr_y = 0.0;
  double psnr_cb = 0.0;
  double psnr_cr = 0.0;
  double mean_delta_e = 0.0;
  std::size_t bytes = 0;
  double compression_ratio = 0.0;  // 24-bit RGB size over coded size
};

QualityReport evaluate(const RgbImage& out, const RgbImage& ref, std::size_t coded_bytes);

}  // namespace cfacomp
