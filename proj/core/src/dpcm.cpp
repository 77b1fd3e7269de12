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

#include "cfacomp/dpcm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "cfacomp/error.hpp"

namespace cfacomp {

std::vector<double> gen_ar1(const Ar1Config& cfg) {
  if (!(cfg.rho >= 0.0 && cfg.rho < 1.0)) throw ConfigError("rho must be in [0, 1)");
  if (!(cfg.sigma_w > 0.0)) throw ConfigError("sigma_w must be positive");
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> w(0.0, cfg.sigma_w);
  std::vector<double> x(cfg.n);
  if (cfg.n == 0) return x;
  x[0] = w(rng) / std::sqrt(1.0 - cfg.rho * cfg.rho);
  for (std::size_t i = 1; i < cfg.n; ++i) x[i] = cfg.rho * x[i - 1] + w(rng);
  return x;
}

std::vector<double> diff_sequence(std::span<const double> x) {
  std::vector<double> z;
  if (x.size() < 2) return z;
  z.reserve(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) z.push_back(x[i] - x[i - 1]);
  return z;
}

Interpolated interp_double(std::span<const double> x) {
  Interpolated r;
  if (x.empty()) return r;
  r.y.reserve(2 * x.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.y.push_back(x[i]);
    if (i + 1 < x.size()) r.y.push_back(0.5 * (x[i] + x[i + 1]));
  }
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    r.t.push_back(r.y[2 * i + 1] - r.y[2 * i]);
    r.s.push_back(r.y[2 * i + 2] - r.y[2 * i + 1]);
  }
  return r;
}

std::optional<double> theoretical_rate(DpcmKind kind, double rho, double sigma_w, double d) {
  const double s2 = sigma_w * sigma_w;
  if (!(d > 0.0)) return std::nullopt;
  if (kind == DpcmKind::kDpcm) {
    const double var_z = 2.0 * s2 / (1.0 + rho);
    if (d >= var_z) return std::nullopt;
    return 0.5 * std::log2(var_z / d);
  }
  const double var_t = s2 / (2.0 * (1.0 + rho));
  if (d >= var_t) return std::nullopt;
  return std::log2(var_t / d);
}

RdCurve theoretical_rd(DpcmKind kind, double rho, double sigma_w,
                       std::span<const double> d_grid) {
  RdCurve c;
  c.label = kind == DpcmKind::kDpcm ? "dpcm-theory" : "dpcmi-theory";
  for (double d : d_grid) {
    if (auto r = theoretical_rate(kind, rho, sigma_w, d)) c.points.push_back({*r, d});
  }
  return c;
}

RdSample analytic_crossover(double rho, double sigma_w) {
  return {2.0, sigma_w * sigma_w / (8.0 * (1.0 + rho))};
}

std::optional<RdSample> numeric_crossover(DpcmKind a, DpcmKind b, double rho, double sigma_w,
                                          std::span<const double> d_grid) {
  std::optional<double> prev_diff;
  double prev_d = 0.0;
  double prev_ra = 0.0;
  for (double d : d_grid) {
    const auto ra = theoretical_rate(a, rho, sigma_w, d);
    const auto rb = theoretical_rate(b, rho, sigma_w, d);
    if (!ra || !rb) {
      prev_diff.reset();
      continue;
    }
    const double diff = *ra - *rb;
    if (diff == 0.0) return RdSample{*ra, d};
    if (prev_diff && (*prev_diff < 0.0) != (diff < 0.0)) {
      const double f = *prev_diff / (*prev_diff - diff);
      return RdSample{prev_ra + f * (*ra - prev_ra), prev_d + f * (d - prev_d)};
    }
    prev_diff = diff;
    prev_d = d;
    prev_ra = *ra;
  }
  return std::nullopt;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g;
  if (count == 0) return g;
  if (count == 1) return {lo};
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    g.push_back(std::exp(a + (b - a) * static_cast<double>(i) / (count - 1)));
  }
  return g;
}

QuantStats quantize(std::span<const double> v, const QuantizerConfig& q) {
  if (!(q.delta > 0.0)) throw ConfigError("quantizer step must be positive");
  if (q.bins < 0 || (q.bins > 0 && q.bins % 2 == 0)) {
    throw ConfigError("quantizer bin count must be odd");
  }
  const long long limit = q.bins > 0 ? (q.bins - 1) / 2 : 0;
  std::unordered_map<long long, std::size_t> counts;
  double sse = 0.0;
  for (double x : v) {
    long long k = std::llround(x / q.delta);
    if (q.bins > 0) k = std::clamp(k, -limit, limit);
    const double e = x - static_cast<double>(k) * q.delta;
    sse += e * e;
    ++counts[k];
  }
  QuantStats s;
  if (v.empty()) return s;
  const double n = static_cast<double>(v.size());
  for (const auto& [k, c] : counts) {
    const double p = static_cast<double>(c) / n;
    s.entropy -= p * std::log2(p);
  }
  s.mse = sse / n;
  return s;
}

OperationalRd operational_rd(std::span<const double> x, std::span<const double> deltas) {
  OperationalRd r;
  r.dpcm.label = "dpcm";
  r.dpcmi.label = "dpcmi";
  const auto z = diff_sequence(x);
  const auto it = interp_double(x);
  for (double delta : deltas) {
    r.deltas.push_back(delta);
    const QuantStats a = quantize(z, {delta, 0});
    r.dpcm.points.push_back({a.entropy, a.mse});
    const QuantStats t = quantize(it.t, {delta / 2.0, 0});
    const QuantStats s = quantize(it.s, {delta / 2.0, 0});
    r.dpcmi.points.push_back({t.entropy + s.entropy, 0.5 * (t.mse + s.mse)});
  }
  return r;
}

InterpMse interp_mse_check(std::span<const double> x, std::span<const double> x_hat) {
  if (x.size() != x_hat.size()) throw ConfigError("sequences differ in length");
  InterpMse r;
  if (x.empty()) return r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = x_hat[i] - x[i];
    r.coded += e * e;
  }
  r.coded /= static_cast<double>(x.size());
  if (x.size() < 2) return r;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double e = 0.5 * ((x_hat[i] - x[i]) + (x_hat[i + 1] - x[i + 1]));
    r.interp += e * e;
  }
  r.interp /= static_cast<double>(x.size() - 1);
  return r;
}

}  // namespace cfacomp
