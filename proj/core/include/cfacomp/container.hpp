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

// Self-describing byte container shared by every pipeline. All multi-byte
// integers are little-endian.
//
//   "CFAC" | version u8 | method u8 | coder u8 | interp u8 |
//   width u32 | height u32 | block_w u32 | block_h u32 | plane count u8 |
//   per plane: role u8 | length u32 | payload
//
// Masks and block geometries are never stored; decoders rebuild them from
// the image size and block size.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfacomp/demosaic.hpp"

namespace cfacomp {

enum class Method : std::uint8_t {
  kCai = 0,
  kIadShift = 1,
  kIadRot2x2 = 2,
  kIadRotN = 3,
};

enum class Coder : std::uint8_t { kDct = 0, kSpiht = 1 };

enum class PlaneRole : std::uint8_t { kY = 0, kCb = 1, kCr = 2 };

std::string_view to_string(Method m);
std::string_view to_string(Coder c);
std::optional<Method> parse_method(std::string_view name);
std::optional<Coder> parse_coder(std::string_view name);

struct CodedPlane {
  PlaneRole role = PlaneRole::kY;
  std::vector<std::uint8_t> payload;
  bool operator==(const CodedPlane&) const = default;
};

struct CodedContainer {
  static constexpr std::uint8_t kVersion = 1;
  static constexpr std::size_t kHeaderBytes = 25;
  static constexpr std::size_t kPlaneHeaderBytes = 5;

  std::uint8_t version = kVersion;
  Method method = Method::kCai;
  Coder coder = Coder::kDct;
  InterpMethod interp = InterpMethod::kBilinear;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t block_w = 2;
  std::uint32_t block_h = 2;
  std::vector<CodedPlane> planes;

  std::size_t byte_size() const;
  // Throws DecodeError when the role is absent.
  const CodedPlane& plane(PlaneRole role) const;
  bool operator==(const CodedContainer&) const = default;
};

// Bytes taken by the container framing around `plane_count` payloads.
constexpr std::size_t container_overhead(std::size_t plane_count) {
  return CodedContainer::kHeaderBytes +
         plane_count * CodedContainer::kPlaneHeaderBytes;
}

std::vector<std::uint8_t> serialize(const CodedContainer& c);

// Throws DecodeError on bad magic, unknown ids or truncation.
CodedContainer parse_container(std::span<const std::uint8_t> bytes);

void write_container(const std::string& path, const CodedContainer& c);
CodedContainer read_container(const std::string& path);

}  // namespace cfacomp
