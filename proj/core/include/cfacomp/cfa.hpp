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

// Sensor simulation and reference construction.

#pragma once

#include "cfacomp/demosaic.hpp"
#include "cfacomp/image.hpp"

namespace cfacomp {

// Keeps the one channel per pixel that the Bayer layout records.
BayerImage mosaic(const RgbImage& rgb);

// Ground truth for every quality metric: the uncompressed mosaic,
// demosaiced with the same method the decoder will use.
RgbImage reference_image(const BayerImage& cfa, InterpMethod interp);

// Green samples of a mosaic placed on the quincunx lattice.
QuincunxPlane green_plane(const BayerImage& cfa);

}  // namespace cfacomp
