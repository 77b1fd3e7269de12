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

// Reversible RGB <-> YCbCr conversions that operate directly on mosaic data
// without increasing the sample count: each 2x2 Bayer tile (two greens, one
// red, one blue) becomes two Y, one Cb and one Cr value.

#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cfacomp/image.hpp"

namespace cfacomp {

// 3x3 RGB -> YCbCr matrix with the (0, 128, 128) offset.
struct ConversionMatrix {
  std::array<std::array<double, 3>, 3> a{};

  // JFIF / CCIR 601 coefficients.
  static ConversionMatrix jfif();
  // Three-decimal coefficients with a 0.297 luma red weight.
  static ConversionMatrix three_decimal();
  static std::optional<ConversionMatrix> by_name(std::string_view name);

  double determinant() const;

  // Full-pixel conversions; offsets included.
  std::array<double, 3> to_ycbcr(double r, double g, double b) const;
  // Throws SingularMatrix when the matrix cannot be inverted.
  std::array<double, 3> to_rgb(double y, double cb, double cr) const;

  bool operator==(const ConversionMatrix&) const = default;
};

// The 4x4 operator mapping (R, G_ul, G_lr, B) of one tile to
// (Y_ul, Y_lr, Cb, Cr), plus its inverse.
class Block2x2Matrix {
 public:
  explicit Block2x2Matrix(const ConversionMatrix& m);

  using Mat4 = std::array<std::array<double, 4>, 4>;
  static constexpr std::array<double, 4> kOffset = {0.0, 0.0, 128.0, 128.0};

  const Mat4& forward() const { return forward_; }
  // Throws SingularMatrix if the forward operator is not invertible.
  const Mat4& inverse() const;
  double determinant() const { return det_; }

 private:
  Mat4 forward_{};
  Mat4 inverse_{};
  double det_ = 0.0;
};

enum class ConversionMode : std::uint8_t { kBlock2x2 = 0, kBlockN = 1 };

// Mosaic data after format conversion. Y sits on the green sites; one Cb and
// one Cr per 2x2 tile are stored at tile coordinates (x/2, y/2).
struct YCbCrCfa {
  QuincunxPlane y;
  PlaneImage cb;
  PlaneImage cr;
  ConversionMode mode = ConversionMode::kBlock2x2;
  int block_w = 2;
  int block_h = 2;

  int width() const { return y.width(); }
  int height() const { return y.height(); }
  std::size_t sample_count() const {
    return y.valid_count() + cb.size() + cr.size();
  }
};

YCbCrCfa convert_2x2_forward(const BayerImage& cfa,
                             const ConversionMatrix& m = ConversionMatrix::jfif());
BayerImage convert_2x2_inverse(const YCbCrCfa& ycc,
                               const ConversionMatrix& m = ConversionMatrix::jfif());

// Block-based conversion: inside each block_w x block_h block (edge blocks
// may be smaller) the missing colors come from bilinear interpolation
// restricted to the block, then Y is kept at green, Cb at blue and Cr at red
// sites. block_w/block_h must be even.
YCbCrCfa convert_blockN_forward(const BayerImage& cfa, int block_w, int block_h,
                                const ConversionMatrix& m = ConversionMatrix::jfif());

// Dense inverse of the forward block operator for one block geometry.
// Rows index mosaic samples and columns converted samples, both in
// block-local row-major order; offsets are excluded.
struct ReverseBlockMatrix {
  int block_w = 0;
  int block_h = 0;
  std::vector<double> coeffs;  // (w*h) x (w*h), row-major

  double at(int row, int col) const {
    return coeffs[static_cast<std::size_t>(row) * block_w * block_h + col];
  }
};

// Dense forward operator of one block (same ordering as ReverseBlockMatrix).
std::vector<double> build_forward_matrix(int block_w, int block_h,
                                         const ConversionMatrix& m);
ReverseBlockMatrix build_reverse_matrix(int block_w, int block_h,
                                        const ConversionMatrix& m = ConversionMatrix::jfif());

// Factorized inverse of one block geometry.
class BlockSolver {
 public:
  BlockSolver(int block_w, int block_h, const ConversionMatrix& m);
  ~BlockSolver();
  BlockSolver(const BlockSolver&) = delete;
  BlockSolver& operator=(const BlockSolver&) = delete;

  int block_w() const { return block_w_; }
  int block_h() const { return block_h_; }

  // Solves forward * mosaic = converted in place (offset-free values).
  void solve(std::vector<double>& values) const;

 private:
  struct Impl;
  int block_w_;
  int block_h_;
  std::unique_ptr<Impl> impl_;
};

// Thread-safe store of factorized reverse operators keyed by block size.
class ReverseCache {
 public:
  explicit ReverseCache(ConversionMatrix m = ConversionMatrix::jfif())
      : matrix_(m) {}

  const ConversionMatrix& matrix() const { return matrix_; }

  // Factorizes every block geometry an image of this size splits into.
  void prepare(int image_w, int image_h, int block_w, int block_h);
  std::shared_ptr<const BlockSolver> find(int block_w, int block_h) const;
  std::shared_ptr<const BlockSolver> get_or_build(int block_w, int block_h);

 private:
  ConversionMatrix matrix_;
  mutable std::mutex mu_;
  std::map<std::pair<int, int>, std::shared_ptr<const BlockSolver>> solvers_;
};

// Throws ConfigError when a block geometry has not been prepared in `cache`.
BayerImage convert_blockN_inverse(const YCbCrCfa& ycc, const ReverseCache& cache);

// Sizes of the blocks an image splits into along one axis.
std::vector<int> block_extents(int image_size, int block_size);

// Fraction of Y samples whose bilinear neighborhood is cut by a block edge.
double block_boundary_y_fraction(int image_w, int image_h, int block_w, int block_h);

}  // namespace cfacomp
