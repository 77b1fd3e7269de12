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

// One-dimensional model of coding before versus after interpolation:
// a Gaussian AR(1) source, open-loop DPCM on the source (DPCM) and on a
// linearly interpolated, double-length version of it (DPCMI).
//
// Rates are always bits per original source sample.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cfacomp {

struct Ar1Config {
  double rho = 0.9;
  double sigma_w = 1.0;
  std::size_t n = 1'000'000;
  std::uint64_t seed = 1;
};

// X_n = rho X_{n-1} + W_n, W_n ~ N(0, sigma_w^2); X_0 is drawn from the
// stationary law. Throws ConfigError for rho outside [0, 1) or sigma_w <= 0.
std::vector<double> gen_ar1(const Ar1Config& cfg);

// z_n = x_n - x_{n-1}, n >= 1.
std::vector<double> diff_sequence(std::span<const double> x);

struct Interpolated {
  std::vector<double> y;  // 2n - 1 samples, odd ones are midpoints
  std::vector<double> t;  // midpoint minus left sample
  std::vector<double> s;  // right sample minus midpoint
};
Interpolated interp_double(std::span<const double> x);

struct RdSample {
  double rate = 0.0;
  double distortion = 0.0;
};

struct RdCurve {
  std::string label;
  std::vector<RdSample> points;
};

enum class DpcmKind { kDpcm, kDpcmi };

// Empty outside the formula's domain (distortion at or above the variance
// of the coded sequence).
std::optional<double> theoretical_rate(DpcmKind kind, double rho, double sigma_w, double d);
RdCurve theoretical_rd(DpcmKind kind, double rho, double sigma_w, std::span<const double> d_grid);

// The point where both theoretical curves meet: D = sigma^2 / (8 (1 + rho)),
// R = 2 bits.
RdSample analytic_crossover(double rho, double sigma_w);

// Linear interpolation of the first sign change of rate_a - rate_b over a
// shared distortion grid.
std::optional<RdSample> numeric_crossover(DpcmKind a, DpcmKind b, double rho, double sigma_w,
                                          std::span<const double> d_grid);

// Log-spaced grid, `count` points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

struct QuantizerConfig {
  double delta = 1.0;
  int bins = 0;  // odd; 0 means unbounded
};

struct QuantStats {
  double entropy = 0.0;  // bits per symbol
  double mse = 0.0;
};

// Midtread uniform quantization, idealized entropy coding.
QuantStats quantize(std::span<const double> v, const QuantizerConfig& q);

struct OperationalRd {
  std::vector<double> deltas;
  RdCurve dpcm;   // z quantized with delta
  RdCurve dpcmi;  // t and s quantized with delta / 2
};

OperationalRd operational_rd(std::span<const double> x, std::span<const double> deltas);

struct InterpMse {
  double coded = 0.0;
  double interp = 0.0;
};

// MSE of the coded samples and of their midpoint interpolation.
InterpMse interp_mse_check(std::span<const double> x, std::span<const double> x_hat);

}  // namespace cfacomp
