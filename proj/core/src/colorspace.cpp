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

#include "cfacomp/colorspace.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>

#include "cfacomp/demosaic.hpp"
#include "cfacomp/error.hpp"

namespace cfacomp {
namespace {

constexpr double kSingularTol = 1e-12;

// Output row of the 3x3 matrix used at a site: Y at green, Cb at blue,
// Cr at red.
int output_row(Channel c) {
  switch (c) {
    case Channel::kGreen: return 0;
    case Channel::kBlue: return 1;
    case Channel::kRed: return 2;
  }
  return 0;
}

double output_offset(Channel c) { return c == Channel::kGreen ? 0.0 : 128.0; }

// Emits the linear combination of mosaic samples that produces the converted
// value at (x, y) when interpolation is confined to `block`.
template <typename F>
void block_conversion_row(int x, int y, const Rect& block,
                          const ConversionMatrix& m, F&& emit) {
  const Channel own = BayerImage::channel_at(x, y);
  const auto& row = m.a[output_row(own)];
  for (Channel c : {Channel::kRed, Channel::kGreen, Channel::kBlue}) {
    const double coef = row[static_cast<int>(c)];
    if (c == own) {
      emit(x, y, coef);
      continue;
    }
    int n = 0;
    for_each_bilinear_neighbor(x, y, c, block, [&](int, int) { ++n; });
    for_each_bilinear_neighbor(x, y, c, block,
                               [&](int nx, int ny) { emit(nx, ny, coef / n); });
  }
}

void require_blocks(int block_w, int block_h) {
  if (block_w < 2 || block_h < 2 || (block_w & 1) || (block_h & 1))
    throw InvalidGeometry("block size " + std::to_string(block_w) + "x" +
                          std::to_string(block_h) + " must be even and >= 2");
}

YCbCrCfa empty_ycc(int w, int h) {
  return YCbCrCfa{QuincunxPlane::for_image(w, h), PlaneImage(w / 2, h / 2),
                  PlaneImage(w / 2, h / 2)};
}

}  // namespace

ConversionMatrix ConversionMatrix::jfif() {
  return {{{{0.299, 0.587, 0.114},
            {-0.168736, -0.331264, 0.5},
            {0.5, -0.418688, -0.081312}}}};
}

ConversionMatrix ConversionMatrix::three_decimal() {
  return {{{{0.297, 0.587, 0.114}, {-0.169, -0.331, 0.500}, {0.500, -0.419, -0.081}}}};
}

std::optional<ConversionMatrix> ConversionMatrix::by_name(std::string_view name) {
  if (name == "jfif") return jfif();
  if (name == "three-decimal") return three_decimal();
  return std::nullopt;
}

double ConversionMatrix::determinant() const {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

std::array<double, 3> ConversionMatrix::to_ycbcr(double r, double g, double b) const {
  return {a[0][0] * r + a[0][1] * g + a[0][2] * b,
          a[1][0] * r + a[1][1] * g + a[1][2] * b + 128.0,
          a[2][0] * r + a[2][1] * g + a[2][2] * b + 128.0};
}

std::array<double, 3> ConversionMatrix::to_rgb(double y, double cb, double cr) const {
  const double det = determinant();
  if (std::abs(det) < kSingularTol) throw SingularMatrix("RGB->YCbCr matrix is singular");
  // Adjugate / determinant.
  const double inv[3][3] = {
      {(a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det,
       (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det,
       (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det},
      {(a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det,
       (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det,
       (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det},
      {(a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det,
       (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det,
       (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det}};
  const double v[3] = {y, cb - 128.0, cr - 128.0};
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = inv[i][0] * v[0] + inv[i][1] * v[1] + inv[i][2] * v[2];
  return out;
}

Block2x2Matrix::Block2x2Matrix(const ConversionMatrix& m) {
  const auto& a = m.a;
  forward_ = {{{a[0][0], a[0][1], 0.0, a[0][2]},
               {a[0][0], 0.0, a[0][1], a[0][2]},
               {a[1][0], a[1][1] / 2, a[1][1] / 2, a[1][2]},
               {a[2][0], a[2][1] / 2, a[2][1] / 2, a[2][2]}}};
  Eigen::Matrix4d f;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) f(i, j) = forward_[i][j];
  det_ = f.determinant();
  if (std::abs(det_) >= kSingularTol) {
    Eigen::Matrix4d inv = f.inverse();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) inverse_[i][j] = inv(i, j);
  }
}

const Block2x2Matrix::Mat4& Block2x2Matrix::inverse() const {
  if (std::abs(det_) < kSingularTol)
    throw SingularMatrix("2x2 format conversion matrix is singular");
  return inverse_;
}

YCbCrCfa convert_2x2_forward(const BayerImage& cfa, const ConversionMatrix& m) {
  const Block2x2Matrix op(m);
  const auto& f = op.forward();
  YCbCrCfa out = empty_ycc(cfa.width(), cfa.height());
  for (int by = 0; by < cfa.height() / 2; ++by) {
    for (int bx = 0; bx < cfa.width() / 2; ++bx) {
      const int x = 2 * bx, y = 2 * by;
      const double in[4] = {cfa.at(x + 1, y), cfa.at(x, y), cfa.at(x + 1, y + 1),
                            cfa.at(x, y + 1)};
      double res[4];
      for (int i = 0; i < 4; ++i)
        res[i] = f[i][0] * in[0] + f[i][1] * in[1] + f[i][2] * in[2] +
                 f[i][3] * in[3] + Block2x2Matrix::kOffset[i];
      out.y.samples.at(x, y) = res[0];
      out.y.samples.at(x + 1, y + 1) = res[1];
      out.cb.at(bx, by) = res[2];
      out.cr.at(bx, by) = res[3];
    }
  }
  return out;
}

BayerImage convert_2x2_inverse(const YCbCrCfa& ycc, const ConversionMatrix& m) {
  if (ycc.mode != ConversionMode::kBlock2x2)
    throw ConfigError("convert_2x2_inverse needs 2x2-mode data");
  const Block2x2Matrix op(m);
  const auto& inv = op.inverse();
  BayerImage out(ycc.width(), ycc.height());
  for (int by = 0; by < ycc.height() / 2; ++by) {
    for (int bx = 0; bx < ycc.width() / 2; ++bx) {
      const int x = 2 * bx, y = 2 * by;
      const double in[4] = {ycc.y.samples.at(x, y), ycc.y.samples.at(x + 1, y + 1),
                            ycc.cb.at(bx, by) - 128.0, ycc.cr.at(bx, by) - 128.0};
      double res[4];
      for (int i = 0; i < 4; ++i)
        res[i] = inv[i][0] * in[0] + inv[i][1] * in[1] + inv[i][2] * in[2] +
                 inv[i][3] * in[3];
      out.at(x + 1, y) = res[0];
      out.at(x, y) = res[1];
      out.at(x + 1, y + 1) = res[2];
      out.at(x, y + 1) = res[3];
    }
  }
  return out;
}

std::vector<int> block_extents(int image_size, int block_size) {
  std::vector<int> out;
  for (int start = 0; start < image_size; start += block_size)
    out.push_back(std::min(block_size, image_size - start));
  return out;
}

YCbCrCfa convert_blockN_forward(const BayerImage& cfa, int block_w, int block_h,
                                const ConversionMatrix& m) {
  require_blocks(block_w, block_h);
  if (block_w > cfa.width() || block_h > cfa.height())
    throw InvalidGeometry("conversion block larger than image");
  YCbCrCfa out = empty_ycc(cfa.width(), cfa.height());
  out.mode = ConversionMode::kBlockN;
  out.block_w = block_w;
  out.block_h = block_h;
  for (int y = 0; y < cfa.height(); ++y) {
    const int y0 = (y / block_h) * block_h;
    for (int x = 0; x < cfa.width(); ++x) {
      const int x0 = (x / block_w) * block_w;
      const Rect block{x0, y0, std::min(x0 + block_w, cfa.width()),
                       std::min(y0 + block_h, cfa.height())};
      const Channel own = cfa.channel(x, y);
      double v = output_offset(own);
      block_conversion_row(x, y, block, m,
                           [&](int nx, int ny, double c) { v += c * cfa.at(nx, ny); });
      switch (own) {
        case Channel::kGreen: out.y.samples.at(x, y) = v; break;
        case Channel::kBlue: out.cb.at(x / 2, y / 2) = v; break;
        case Channel::kRed: out.cr.at(x / 2, y / 2) = v; break;
      }
    }
  }
  return out;
}

std::vector<double> build_forward_matrix(int block_w, int block_h,
                                         const ConversionMatrix& m) {
  require_blocks(block_w, block_h);
  const int n = block_w * block_h;
  std::vector<double> f(static_cast<std::size_t>(n) * n, 0.0);
  const Rect block{0, 0, block_w, block_h};
  for (int y = 0; y < block_h; ++y)
    for (int x = 0; x < block_w; ++x)
      block_conversion_row(x, y, block, m, [&](int nx, int ny, double c) {
        f[static_cast<std::size_t>(y * block_w + x) * n + (ny * block_w + nx)] += c;
      });
  return f;
}

struct BlockSolver::Impl {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

BlockSolver::BlockSolver(int block_w, int block_h, const ConversionMatrix& m)
    : block_w_(block_w), block_h_(block_h), impl_(std::make_unique<Impl>()) {
  require_blocks(block_w, block_h);
  const int n = block_w * block_h;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * 9);
  const Rect block{0, 0, block_w, block_h};
  for (int y = 0; y < block_h; ++y)
    for (int x = 0; x < block_w; ++x)
      block_conversion_row(x, y, block, m, [&](int nx, int ny, double c) {
        triplets.emplace_back(y * block_w + x, ny * block_w + nx, c);
      });
  Eigen::SparseMatrix<double> f(n, n);
  f.setFromTriplets(triplets.begin(), triplets.end());
  f.makeCompressed();
  impl_->lu.compute(f);
  if (impl_->lu.info() != Eigen::Success)
    throw SingularMatrix("block conversion operator " + std::to_string(block_w) +
                         "x" + std::to_string(block_h) + " is singular");
}

BlockSolver::~BlockSolver() = default;

void BlockSolver::solve(std::vector<double>& values) const {
  Eigen::Map<Eigen::VectorXd> v(values.data(), static_cast<Eigen::Index>(values.size()));
  Eigen::VectorXd x = impl_->lu.solve(v);
  v = x;
}

ReverseBlockMatrix build_reverse_matrix(int block_w, int block_h,
                                        const ConversionMatrix& m) {
  const BlockSolver solver(block_w, block_h, m);
  const int n = block_w * block_h;
  ReverseBlockMatrix out{block_w, block_h,
                         std::vector<double>(static_cast<std::size_t>(n) * n)};
  std::vector<double> col(n);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    solver.solve(col);
    for (int i = 0; i < n; ++i) out.coeffs[static_cast<std::size_t>(i) * n + j] = col[i];
  }
  return out;
}

void ReverseCache::prepare(int image_w, int image_h, int block_w, int block_h) {
  for (int bh : block_extents(image_h, block_h))
    for (int bw : block_extents(image_w, block_w)) get_or_build(bw, bh);
}

std::shared_ptr<const BlockSolver> ReverseCache::find(int block_w, int block_h) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = solvers_.find({block_w, block_h});
  return it == solvers_.end() ? nullptr : it->second;
}

std::shared_ptr<const BlockSolver> ReverseCache::get_or_build(int block_w, int block_h) {
  if (auto s = find(block_w, block_h)) return s;
  // Factorize outside the lock; a concurrent duplicate build is harmless.
  auto solver = std::make_shared<const BlockSolver>(block_w, block_h, matrix_);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = solvers_.emplace(std::make_pair(block_w, block_h), solver);
  return it->second;
}

BayerImage convert_blockN_inverse(const YCbCrCfa& ycc, const ReverseCache& cache) {
  if (ycc.mode != ConversionMode::kBlockN)
    throw ConfigError("convert_blockN_inverse needs block-mode data");
  const int w = ycc.width(), h = ycc.height();
  BayerImage out(w, h);
  std::vector<double> values;
  for (int y0 = 0; y0 < h; y0 += ycc.block_h) {
    const int bh = std::min(ycc.block_h, h - y0);
    for (int x0 = 0; x0 < w; x0 += ycc.block_w) {
      const int bw = std::min(ycc.block_w, w - x0);
      auto solver = cache.find(bw, bh);
      if (!solver)
        throw ConfigError("no reverse conversion prepared for block " +
                          std::to_string(bw) + "x" + std::to_string(bh));
      values.assign(static_cast<std::size_t>(bw) * bh, 0.0);
      for (int y = 0; y < bh; ++y) {
        for (int x = 0; x < bw; ++x) {
          const int gx = x0 + x, gy = y0 + y;
          double v = 0.0;
          switch (BayerImage::channel_at(gx, gy)) {
            case Channel::kGreen: v = ycc.y.samples.at(gx, gy); break;
            case Channel::kBlue: v = ycc.cb.at(gx / 2, gy / 2) - 128.0; break;
            case Channel::kRed: v = ycc.cr.at(gx / 2, gy / 2) - 128.0; break;
          }
          values[static_cast<std::size_t>(y) * bw + x] = v;
        }
      }
      solver->solve(values);
      for (int y = 0; y < bh; ++y)
        for (int x = 0; x < bw; ++x)
          out.at(x0 + x, y0 + y) = values[static_cast<std::size_t>(y) * bw + x];
    }
  }
  return out;
}

double block_boundary_y_fraction(int image_w, int image_h, int block_w, int block_h) {
  require_even_dims(image_w, image_h, "block_boundary_y_fraction");
  require_blocks(block_w, block_h);
  std::size_t total = 0, boundary = 0;
  for (int y = 0; y < image_h; ++y) {
    const int y0 = (y / block_h) * block_h;
    const int y1 = std::min(y0 + block_h, image_h);
    for (int x = (y & 1); x < image_w; x += 2) {
      const int x0 = (x / block_w) * block_w;
      const int x1 = std::min(x0 + block_w, image_w);
      ++total;
      if (x == x0 || x == x1 - 1 || y == y0 || y == y1 - 1) ++boundary;
    }
  }
  return static_cast<double>(boundary) / static_cast<double>(total);
}

}  // namespace cfacomp
