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

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

namespace cfacomp {

template <typename Field>
std::optional<double> value_at_bytes(std::vector<RdPoint> curve, double bytes, Field field) {
  std::erase_if(curve, [](const RdPoint& p) { return !p.error.empty() || p.bytes == 0; });
  std::sort(curve.begin(), curve.end(),
            [](const RdPoint& a, const RdPoint& b) { return a.bytes < b.bytes; });
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double b0 = static_cast<double>(curve[i].bytes);
    const double b1 = static_cast<double>(curve[i + 1].bytes);
    if (bytes < b0 || bytes > b1) continue;
    if (b1 == b0) return std::invoke(field, curve[i]);
    const double f = (std::log(bytes) - std::log(b0)) / (std::log(b1) - std::log(b0));
    return std::invoke(field, curve[i]) + f * (std::invoke(field, curve[i + 1]) - std::invoke(field, curve[i]));
  }
  return std::nullopt;
}

}  // namespace cfacomp
