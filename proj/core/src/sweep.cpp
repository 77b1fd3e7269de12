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

#include "cfacomp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "cfacomp/cfa.hpp"
#include "cfacomp/error.hpp"
#include "cfacomp/metrics.hpp"

namespace cfacomp {
namespace {

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.4f}", v);
}

// Fields are plain identifiers or messages; quote only when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double clamp255(double v) { return std::clamp(v, 0.0, 255.0); }

void set_rgb(RgbImage& img, int x, int y, double r, double g, double b) {
  img.at(x, y, Channel::kRed) = clamp255(r);
  img.at(x, y, Channel::kGreen) = clamp255(g);
  img.at(x, y, Channel::kBlue) = clamp255(b);
}

// Box-filtered white noise, normalized to zero mean and unit spread.
std::vector<double> smooth_noise(int w, int h, int radius, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> raw(static_cast<std::size_t>(w) * h);
  for (double& v : raw) v = n(rng);
  std::vector<double> out(raw.size(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      int k = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          const int xx = (x + dx + w) % w;
          const int yy = (y + dy + h) % h;
          s += raw[static_cast<std::size_t>(yy) * w + xx];
          ++k;
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = s / std::sqrt(static_cast<double>(k));
    }
  }
  return out;
}

}  // namespace

RdPoint run_point(const NamedImage& img, const PipelineConfig& cfg, ReverseCache& cache) {
  RdPoint p;
  p.image = img.name;
  p.method = cfg.method;
  p.coder = cfg.coder;
  p.interp = cfg.interp;
  const auto [bw, bh] = conversion_block(cfg);
  p.block_w = bw;
  p.block_h = bh;
  p.target = cfg.coder == Coder::kDct ? cfg.quality : static_cast<double>(cfg.target_bytes);
  try {
    const BayerImage cfa = mosaic(img.image);
    const RgbImage ref = reference_image(cfa, cfg.interp);
    const CodedContainer c = encode(cfa, cfg);
    const auto bytes = serialize(c);
    const RgbImage out = decode(parse_container(bytes), cfg.interp, &cache);
    const QualityReport q = evaluate(out, ref, bytes.size());
    p.bytes = q.bytes;
    p.psnr_y = q.psnr_y;
    p.psnr_cb = q.psnr_cb;
    p.psnr_cr = q.psnr_cr;
    p.mean_delta_e = q.mean_delta_e;
    p.compression_ratio = q.compression_ratio;
  } catch (const Error& e) {
    p.error = e.what();
  }
  return p;
}

std::vector<RdPoint> rd_sweep(std::span<const NamedImage> images,
                              std::span<const PipelineConfig> configs, int workers) {
  const std::size_t total = images.size() * configs.size();
  std::vector<RdPoint> results(total);
  ReverseCache cache;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      results[i] = run_point(images[i / configs.size()], configs[i % configs.size()], cache);
    }
  };
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto n = static_cast<std::size_t>(workers);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(n, total); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return results;
}

void write_csv(std::ostream& out, std::span<const RdPoint> points) {
  out << kCsvHeaderComment << '\n'
      << "image,method,coder,interp,block,target,bytes,compression_ratio,psnr_y,psnr_cb,"
         "psnr_cr,mean_delta_e,error\n";
  for (const auto& p : points) {
    out << csv_field(p.image) << ',' << to_string(p.method) << ',' << to_string(p.coder) << ','
        << to_string(p.interp) << ',' << p.block_w << 'x' << p.block_h << ','
        << number(p.target) << ',' << p.bytes << ',' << number(p.compression_ratio) << ','
        << number(p.psnr_y) << ',' << number(p.psnr_cb) << ',' << number(p.psnr_cr) << ','
        << number(p.mean_delta_e) << ',' << csv_field(p.error) << '\n';
  }
}

std::vector<NamedImage> synthetic_corpus(int width, int height, std::uint64_t seed) {
  require_even_dims(width, height, "corpus image");
  std::mt19937_64 rng(seed);
  const double w = width;
  const double h = height;
  std::vector<NamedImage> out;

  RgbImage grad(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      set_rgb(grad, x, y, 255.0 * x / w, 255.0 * y / h, 255.0 * (x + y) / (w + h));
    }
  }
  out.push_back({"gradient", std::move(grad)});

  RgbImage edges(width, height);
  const double cell = std::max(8.0, w / 8.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double u = (x + y) / cell;
      const double v = (x - y + h) / cell;
      const bool a = static_cast<int>(std::floor(u)) % 2 == 0;
      const bool b = static_cast<int>(std::floor(v)) % 2 == 0;
      set_rgb(edges, x, y, a ? 220 : 40, b ? 200 : 60, a != b ? 180 : 30);
    }
  }
  out.push_back({"edges", std::move(edges)});

  RgbImage rings(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double dx = (x - w / 2) / w;
      const double dy = (y - h / 2) / h;
      const double r2 = dx * dx + dy * dy;
      const double s = std::sin(2.0 * std::numbers::pi * 24.0 * r2);
      set_rgb(rings, x, y, 128 + 100 * s, 128 + 60 * std::cos(6.0 * dx), 128 - 90 * s);
    }
  }
  out.push_back({"rings", std::move(rings)});

  RgbImage noise(width, height);
  const auto n0 = smooth_noise(width, height, 2, rng);
  const auto n1 = smooth_noise(width, height, 4, rng);
  const auto n2 = smooth_noise(width, height, 1, rng);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      const double base = 120 + 40 * n1[i];
      set_rgb(noise, x, y, base + 25 * n0[i], base + 15 * n2[i] + 10, base - 20 * n0[i] - 10);
    }
  }
  out.push_back({"texture", std::move(noise)});
  return out;
}

}  // namespace cfacomp
