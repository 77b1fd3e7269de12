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

// Command-line front end: mosaic, encode, decode, metrics, rd-sweep,
// dpcm-sim and gen-corpus.
//
// Exit codes: 0 success, 1 I/O or other failure, 2 configuration error,
// 3 decode error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "cfacomp/cfa.hpp"
#include "cfacomp/container.hpp"
#include "cfacomp/demosaic.hpp"
#include "cfacomp/dpcm.hpp"
#include "cfacomp/error.hpp"
#include "cfacomp/image_io.hpp"
#include "cfacomp/metrics.hpp"
#include "cfacomp/pipeline.hpp"
#include "cfacomp/sweep.hpp"

namespace fs = std::filesystem;
using namespace cfacomp;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDecode = 3;

struct Size {
  int w = 0;
  int h = 0;
};

Size parse_size(const std::string& text, const char* flag) {
  Size s;
  char x = 0;
  std::istringstream in(text);
  if (!(in >> s.w >> x >> s.h) || (x != 'x' && x != 'X') || !in.eof() || s.w <= 0 || s.h <= 0) {
    throw ConfigError(fmt::format("{} expects WxH, got '{}'", flag, text));
  }
  return s;
}

Method method_arg(const std::string& name) {
  if (auto m = parse_method(name)) return *m;
  throw ConfigError(fmt::format("unknown method '{}'", name));
}

Coder coder_arg(const std::string& name) {
  if (auto c = parse_coder(name)) return *c;
  throw ConfigError(fmt::format("unknown coder '{}'", name));
}

InterpMethod interp_arg(const std::string& name) {
  if (auto m = parse_interp(name)) return *m;
  throw ConfigError(fmt::format("unknown interpolation '{}'", name));
}

// A .cfa file is read as-is; anything else is treated as a PPM and mosaicked.
BayerImage load_mosaic(const fs::path& path) {
  if (path.extension() == ".cfa") return read_cfa(path);
  return mosaic(read_ppm(path));
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
  return out;
}

// Options shared by encode and rd-sweep.
struct CodingOptions {
  std::string interp = "bilinear";
  std::string block = "64x64";
  double alloc = 2.0 / 3.0;
  int levels = 5;
  int frac_bits = 0;

  void add_to(CLI::App& cmd, bool single_interp) {
    if (single_interp) {
      cmd.add_option("--interp", interp, "bilinear | hue | gradient | median")
          ->capture_default_str();
    }
    cmd.add_option("--block", block, "iad-rotN conversion block, WxH")->capture_default_str();
    cmd.add_option("--alloc", alloc, "SPIHT luma share of the plane budget")
        ->capture_default_str();
    cmd.add_option("--levels", levels, "SPIHT wavelet levels")->capture_default_str();
    cmd.add_option("--frac-bits", frac_bits, "SPIHT fractional magnitude bits")
        ->capture_default_str();
  }

  PipelineConfig base() const {
    PipelineConfig cfg;
    cfg.interp = interp_arg(interp);
    const Size b = parse_size(block, "--block");
    cfg.block_w = b.w;
    cfg.block_h = b.h;
    cfg.y_fraction = alloc;
    cfg.levels = levels;
    cfg.frac_bits = frac_bits;
    return cfg;
  }
};

void print_report(const QualityReport& r) {
  fmt::print("bytes              {}\n", r.bytes);
  fmt::print("compression_ratio  {:.4f}\n", r.compression_ratio);
  fmt::print("psnr_y             {:.4f}\n", r.psnr_y);
  fmt::print("psnr_cb            {:.4f}\n", r.psnr_cb);
  fmt::print("psnr_cr            {:.4f}\n", r.psnr_cr);
  fmt::print("mean_delta_e       {:.4f}\n", r.mean_delta_e);
}

int run(int argc, char** argv) {
  CLI::App app{"cfacomp: compression of Bayer color filter array images"};
  app.require_subcommand(1);

  // mosaic
  std::string mosaic_in, mosaic_out;
  auto* cmd_mosaic = app.add_subcommand("mosaic", "Sample an RGB PPM through the Bayer filter");
  cmd_mosaic->add_option("--in", mosaic_in, "input PPM")->required();
  cmd_mosaic->add_option("--out", mosaic_out, "output .cfa")->required();

  // encode
  std::string enc_in, enc_out, enc_method = "iad-rot2x2", enc_coder = "spiht";
  int enc_quality = 75;
  std::size_t enc_bytes = 0;
  CodingOptions enc_opts;
  auto* cmd_encode = app.add_subcommand("encode", "Encode a mosaic (.cfa) or PPM into a container");
  cmd_encode->add_option("--in", enc_in, "input .cfa or PPM")->required();
  cmd_encode->add_option("--out", enc_out, "output container")->required();
  cmd_encode->add_option("--method", enc_method, "cai | iad-shift | iad-rot2x2 | iad-rotN")
      ->capture_default_str();
  cmd_encode->add_option("--coder", enc_coder, "dct | spiht")->capture_default_str();
  cmd_encode->add_option("--quality", enc_quality, "DCT quality 1..100")->capture_default_str();
  cmd_encode->add_option("--bytes", enc_bytes, "SPIHT container size target");
  enc_opts.add_to(*cmd_encode, true);

  // decode
  std::string dec_in, dec_out, dec_interp, dec_cfa;
  auto* cmd_decode = app.add_subcommand("decode", "Decode a container to a PPM");
  cmd_decode->add_option("--in", dec_in, "input container")->required();
  cmd_decode->add_option("--out", dec_out, "output PPM")->required();
  cmd_decode->add_option("--interp", dec_interp,
                         "demosaicing for IAD containers (default: the one recorded)");
  cmd_decode->add_option("--cfa", dec_cfa, "also write the decoded mosaic (IAD only)");

  // metrics
  std::string met_in, met_ref, met_container;
  std::size_t met_bytes = 0;
  auto* cmd_metrics = app.add_subcommand("metrics", "Compare a decoded PPM with a reference");
  cmd_metrics->add_option("--in", met_in, "decoded PPM")->required();
  cmd_metrics->add_option("--ref", met_ref, "reference PPM")->required();
  auto* met_c = cmd_metrics->add_option("--container", met_container,
                                        "container whose size is reported");
  cmd_metrics->add_option("--bytes", met_bytes, "coded size to report")->excludes(met_c);

  // rd-sweep
  std::vector<std::string> sw_images;
  std::vector<std::string> sw_methods{"cai", "iad-rot2x2", "iad-rotN"};
  std::vector<std::string> sw_coders{"spiht"};
  std::vector<std::string> sw_interps;
  std::vector<int> sw_quality{20, 40, 60, 75, 90, 95};
  std::vector<std::size_t> sw_bytes{15000, 20000, 30000, 45000, 60000};
  std::string sw_csv, sw_synthetic;
  std::uint64_t sw_seed = 1;
  int sw_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  CodingOptions sw_opts;
  auto* cmd_sweep = app.add_subcommand("rd-sweep", "Rate-distortion sweep to CSV");
  auto* sw_img_opt = cmd_sweep->add_option("--images", sw_images, "input PPMs")->delimiter(',');
  cmd_sweep->add_option("--synthetic", sw_synthetic, "use the synthetic corpus at WxH")
      ->excludes(sw_img_opt);
  cmd_sweep->add_option("--method", sw_methods, "methods")
      ->delimiter(',')
      ->capture_default_str();
  cmd_sweep->add_option("--coder", sw_coders, "coders")->delimiter(',')->capture_default_str();
  cmd_sweep->add_option("--quality", sw_quality, "DCT qualities")
      ->delimiter(',')
      ->capture_default_str();
  cmd_sweep->add_option("--bytes", sw_bytes, "SPIHT container targets")
      ->delimiter(',')
      ->capture_default_str();
  cmd_sweep->add_option("--csv", sw_csv, "output CSV (default stdout)");
  cmd_sweep->add_option("--seed", sw_seed, "synthetic corpus seed")->capture_default_str();
  cmd_sweep->add_option("--workers", sw_workers, "concurrent items")->capture_default_str();
  cmd_sweep->add_option("--interp", sw_interps, "interpolations (default bilinear)")
      ->delimiter(',');
  sw_opts.add_to(*cmd_sweep, false);

  // dpcm-sim
  Ar1Config ar;
  std::size_t dp_sweep = 24;
  double dp_dmin = 0.02, dp_dmax = 4.0;
  std::string dp_csv;
  auto* cmd_dpcm = app.add_subcommand("dpcm-sim", "AR(1) DPCM vs DPCMI rate-distortion");
  cmd_dpcm->add_option("--rho", ar.rho, "AR coefficient")->capture_default_str();
  cmd_dpcm->add_option("--sigma", ar.sigma_w, "innovation std. deviation")->capture_default_str();
  cmd_dpcm->add_option("--n", ar.n, "sequence length")->capture_default_str();
  cmd_dpcm->add_option("--seed", ar.seed, "generator seed")->capture_default_str();
  cmd_dpcm->add_option("--sweep", dp_sweep, "number of quantizer steps")->capture_default_str();
  cmd_dpcm->add_option("--delta-min", dp_dmin, "smallest step (units of sigma)")
      ->capture_default_str();
  cmd_dpcm->add_option("--delta-max", dp_dmax, "largest step (units of sigma)")
      ->capture_default_str();
  cmd_dpcm->add_option("--csv", dp_csv, "output CSV (default stdout)");

  // gen-corpus
  std::string gc_out, gc_size = "512x512";
  std::uint64_t gc_seed = 1;
  auto* cmd_corpus = app.add_subcommand("gen-corpus", "Write the synthetic test corpus as PPMs");
  cmd_corpus->add_option("--out", gc_out, "output directory")->required();
  cmd_corpus->add_option("--size", gc_size, "image size WxH")->capture_default_str();
  cmd_corpus->add_option("--seed", gc_seed, "generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  if (*cmd_mosaic) {
    write_cfa(fs::path(mosaic_out), mosaic(read_ppm(fs::path(mosaic_in))));
    return 0;
  }

  if (*cmd_encode) {
    PipelineConfig cfg = enc_opts.base();
    cfg.method = method_arg(enc_method);
    cfg.coder = coder_arg(enc_coder);
    cfg.quality = enc_quality;
    cfg.target_bytes = enc_bytes;
    const CodedContainer c = encode(load_mosaic(enc_in), cfg);
    write_container(fs::path(enc_out), c);
    fmt::print("{} bytes\n", c.byte_size());
    return 0;
  }

  if (*cmd_decode) {
    const CodedContainer c = read_container(fs::path(dec_in));
    const InterpMethod interp = dec_interp.empty() ? c.interp : interp_arg(dec_interp);
    if (!dec_cfa.empty()) {
      if (c.method == Method::kCai) throw ConfigError("--cfa needs an IAD container");
      write_cfa(fs::path(dec_cfa), decode_cfa(c));
    }
    write_ppm(fs::path(dec_out), decode(c, interp));
    return 0;
  }

  if (*cmd_metrics) {
    std::size_t bytes = met_bytes;
    if (!met_container.empty()) bytes = fs::file_size(met_container);
    print_report(evaluate(read_ppm(fs::path(met_in)), read_ppm(fs::path(met_ref)), bytes));
    return 0;
  }

  if (*cmd_sweep) {
    std::vector<NamedImage> images;
    if (!sw_synthetic.empty()) {
      const Size s = parse_size(sw_synthetic, "--synthetic");
      images = synthetic_corpus(s.w, s.h, sw_seed);
    } else {
      if (sw_images.empty()) throw ConfigError("rd-sweep needs --images or --synthetic");
      for (const auto& p : sw_images) {
        images.push_back({fs::path(p).stem().string(), read_ppm(fs::path(p))});
      }
    }
    if (sw_interps.empty()) sw_interps.push_back("bilinear");
    const PipelineConfig base = sw_opts.base();
    std::vector<PipelineConfig> configs;
    for (const auto& m : sw_methods) {
      for (const auto& c : sw_coders) {
        for (const auto& i : sw_interps) {
          PipelineConfig cfg = base;
          cfg.method = method_arg(m);
          cfg.coder = coder_arg(c);
          cfg.interp = interp_arg(i);
          if (cfg.coder == Coder::kDct) {
            for (int q : sw_quality) {
              cfg.quality = q;
              cfg.validate();
              configs.push_back(cfg);
            }
          } else {
            for (std::size_t b : sw_bytes) {
              cfg.target_bytes = b;
              cfg.validate();
              configs.push_back(cfg);
            }
          }
        }
      }
    }
    const auto points = rd_sweep(images, configs, sw_workers);
    if (sw_csv.empty()) {
      write_csv(std::cout, points);
    } else {
      auto out = open_out(sw_csv);
      write_csv(out, points);
    }
    return 0;
  }

  if (*cmd_dpcm) {
    if (dp_sweep < 2 || !(dp_dmin > 0.0) || !(dp_dmax > dp_dmin)) {
      throw ConfigError("dpcm-sim needs --sweep >= 2 and 0 < --delta-min < --delta-max");
    }
    const auto x = gen_ar1(ar);
    const auto deltas = log_grid(dp_dmin * ar.sigma_w, dp_dmax * ar.sigma_w, dp_sweep);
    const auto op = operational_rd(x, deltas);
    const double s2 = ar.sigma_w * ar.sigma_w;
    const auto d_grid = log_grid(1e-3 * s2, 2.0 * s2, dp_sweep);

    std::ofstream file;
    if (!dp_csv.empty()) file = open_out(dp_csv);
    std::ostream& out = dp_csv.empty() ? std::cout : file;
    fmt::print(out, "# cfacomp dpcm-sim v1 rho={} sigma={} n={} seed={}\n", ar.rho, ar.sigma_w,
               ar.n, ar.seed);
    fmt::print(out, "label,delta,rate_bits_per_sample,mse\n");
    for (const RdCurve* c : {&op.dpcm, &op.dpcmi}) {
      for (std::size_t i = 0; i < c->points.size(); ++i) {
        fmt::print(out, "{},{:.6g},{:.6f},{:.6g}\n", c->label, op.deltas[i], c->points[i].rate,
                   c->points[i].distortion);
      }
    }
    for (DpcmKind k : {DpcmKind::kDpcm, DpcmKind::kDpcmi}) {
      const RdCurve c = theoretical_rd(k, ar.rho, ar.sigma_w, d_grid);
      for (const auto& p : c.points) {
        fmt::print(out, "{},,{:.6f},{:.6g}\n", c.label, p.rate, p.distortion);
      }
    }
    return 0;
  }

  if (*cmd_corpus) {
    const Size s = parse_size(gc_size, "--size");
    fs::create_directories(gc_out);
    for (const auto& img : synthetic_corpus(s.w, s.h, gc_seed)) {
      const fs::path p = fs::path(gc_out) / (img.name + ".ppm");
      write_ppm(p, img.image);
      fmt::print("{}\n", p.string());
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const DecodeError& e) {
    fmt::print(stderr, "decode error: {}\n", e.what());
    return kExitDecode;
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const InvalidGeometry& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFailure;
  }
}
