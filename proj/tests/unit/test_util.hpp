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

// Helpers shared by the unit tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "cfacomp/image.hpp"

namespace cfacomp::testing {

inline std::string data_path(const std::string& name) {
  return std::string(CFACOMP_TEST_DATA_DIR) + "/" + name;
}

inline BayerImage random_bayer(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  BayerImage b(w, h);
  for (double& v : b.samples()) v = u(rng);
  return b;
}

inline RgbImage random_rgb(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(0, 255);
  RgbImage img(w, h);
  for (double& v : img.samples()) v = u(rng);
  return img;
}

// Smooth color image: low-frequency ramps and sinusoids in [0, 255].
inline RgbImage smooth_rgb(int w, int h) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double u = static_cast<double>(x) / w;
      const double v = static_cast<double>(y) / h;
      img.at(x, y, Channel::kRed) = 128 + 90 * std::sin(3.0 * u + 1.0 * v);
      img.at(x, y, Channel::kGreen) = 40 + 170 * u * v;
      img.at(x, y, Channel::kBlue) = 128 + 80 * std::cos(2.0 * v - u);
    }
  }
  return img;
}

inline QuincunxPlane random_quincunx(int w, int h, std::uint64_t seed) {
  QuincunxPlane q = QuincunxPlane::for_image(w, h);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (q.mask.at(x, y)) q.samples.at(x, y) = u(rng);
    }
  }
  return q;
}

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  double m = 0.0;
  auto sa = a.samples();
  auto sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) m = std::max(m, std::abs(sa[i] - sb[i]));
  return m;
}

}  // namespace cfacomp::testing
