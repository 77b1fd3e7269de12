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

// Image containers shared by every stage of the toolkit. Samples are stored
// as doubles, row-major, origin top-left; x is the column and y the row.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cfacomp/error.hpp"

namespace cfacomp {

enum class Channel : std::uint8_t { kRed = 0, kGreen = 1, kBlue = 2 };

// Dense rectangular grid of real samples.
class PlaneImage {
 public:
  PlaneImage() = default;
  PlaneImage(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  double& at(int x, int y) { return samples_[index(x, y)]; }
  double at(int x, int y) const { return samples_[index(x, y)]; }

  std::span<double> samples() { return samples_; }
  std::span<const double> samples() const { return samples_; }

  bool operator==(const PlaneImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> samples_;
};

// Per-pixel validity flags for shape-adaptive coding.
class ShapeMask {
 public:
  ShapeMask() = default;
  ShapeMask(int width, int height, bool fill = false);

  static ShapeMask full(int width, int height) {
    return ShapeMask(width, height, true);
  }

  int width() const { return width_; }
  int height() const { return height_; }

  bool at(int x, int y) const { return valid_[index(x, y)] != 0; }
  void set(int x, int y, bool v) { valid_[index(x, y)] = v ? 1 : 0; }

  std::size_t count() const;

  bool operator==(const ShapeMask&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> valid_;
};

// Full-color image. Width and height must be even and at least 2.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  double& at(int x, int y, Channel c) { return samples_[index(x, y, c)]; }
  double at(int x, int y, Channel c) const { return samples_[index(x, y, c)]; }

  // Interleaved R,G,B samples.
  std::span<double> samples() { return samples_; }
  std::span<const double> samples() const { return samples_; }

  bool operator==(const RgbImage&) const = default;

 private:
  std::size_t index(int x, int y, Channel c) const {
    return 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(x)) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> samples_;
};

// Single-channel Bayer mosaic with the fixed layout
//   row 0: G R G R ...
//   row 1: B G B G ...
class BayerImage {
 public:
  BayerImage() = default;
  BayerImage(int width, int height, double fill = 0.0);

  static constexpr Channel channel_at(int x, int y) {
    if ((y & 1) == 0) return (x & 1) == 0 ? Channel::kGreen : Channel::kRed;
    return (x & 1) == 0 ? Channel::kBlue : Channel::kGreen;
  }
  static constexpr bool is_green(int x, int y) { return ((x + y) & 1) == 0; }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return samples_.size(); }

  double& at(int x, int y) { return samples_[index(x, y)]; }
  double at(int x, int y) const { return samples_[index(x, y)]; }
  Channel channel(int x, int y) const { return channel_at(x, y); }

  std::span<double> samples() { return samples_; }
  std::span<const double> samples() const { return samples_; }

  bool operator==(const BayerImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> samples_;
};

// Luminance samples on the green (quincunx) sites of a Bayer image. The plane
// has the full image size; mask marks the sites that carry data.
struct QuincunxPlane {
  PlaneImage samples;
  ShapeMask mask;

  // Empty plane for a w x h image, mask set on the green sites.
  static QuincunxPlane for_image(int width, int height);

  int width() const { return samples.width(); }
  int height() const { return samples.height(); }
  std::size_t valid_count() const { return mask.count(); }

  bool operator==(const QuincunxPlane&) const = default;
};

// Throws InvalidGeometry unless both dimensions are even and >= 2.
void require_even_dims(int width, int height, const char* what);

// Rounds half away from zero and clamps to [0, 255].
std::uint8_t to_byte(double v);

}  // namespace cfacomp
