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

// Netpbm and raw CFA file I/O. Samples are quantized to 8 bits on write
// (round half away from zero, clamp to [0, 255]).

#pragma once

#include <filesystem>
#include <iosfwd>

#include "cfacomp/image.hpp"

namespace cfacomp {

RgbImage read_ppm(std::istream& in);
RgbImage read_ppm(const std::filesystem::path& path);
void write_ppm(std::ostream& out, const RgbImage& img);
void write_ppm(const std::filesystem::path& path, const RgbImage& img);

PlaneImage read_pgm(std::istream& in);
PlaneImage read_pgm(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const PlaneImage& img);
void write_pgm(const std::filesystem::path& path, const PlaneImage& img);

// Raw mosaic: "CFA1 <width> <height> GRBG\n" followed by width*height
// row-major bytes.
BayerImage read_cfa(std::istream& in);
BayerImage read_cfa(const std::filesystem::path& path);
void write_cfa(std::ostream& out, const BayerImage& img);
void write_cfa(const std::filesystem::path& path, const BayerImage& img);

}  // namespace cfacomp
