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

#include "cfacomp/container.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <string>

#include "cfacomp/error.hpp"

namespace cfacomp {
namespace {

constexpr std::array<char, 4> kMagic = {'C', 'F', 'A', 'C'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw DecodeError("truncated container", pos_);
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kCai: return "cai";
    case Method::kIadShift: return "iad-shift";
    case Method::kIadRot2x2: return "iad-rot2x2";
    case Method::kIadRotN: return "iad-rotN";
  }
  return "?";
}

std::string_view to_string(Coder c) {
  return c == Coder::kDct ? "dct" : "spiht";
}

std::optional<Method> parse_method(std::string_view name) {
  for (auto m : {Method::kCai, Method::kIadShift, Method::kIadRot2x2, Method::kIadRotN}) {
    if (name == to_string(m)) return m;
  }
  if (name == "iad-rotn") return Method::kIadRotN;
  return std::nullopt;
}

std::optional<Coder> parse_coder(std::string_view name) {
  if (name == "dct") return Coder::kDct;
  if (name == "spiht") return Coder::kSpiht;
  return std::nullopt;
}

std::size_t CodedContainer::byte_size() const {
  std::size_t n = container_overhead(planes.size());
  for (const auto& p : planes) n += p.payload.size();
  return n;
}

const CodedPlane& CodedContainer::plane(PlaneRole role) const {
  for (const auto& p : planes) {
    if (p.role == role) return p;
  }
  throw DecodeError("container lacks plane " + std::to_string(static_cast<int>(role)), 0);
}

std::vector<std::uint8_t> serialize(const CodedContainer& c) {
  std::vector<std::uint8_t> out;
  out.reserve(c.byte_size());
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  out.push_back(c.version);
  out.push_back(static_cast<std::uint8_t>(c.method));
  out.push_back(static_cast<std::uint8_t>(c.coder));
  out.push_back(static_cast<std::uint8_t>(c.interp));
  put_u32(out, c.width);
  put_u32(out, c.height);
  put_u32(out, c.block_w);
  put_u32(out, c.block_h);
  if (c.planes.size() > 255) throw ConfigError("too many planes");
  out.push_back(static_cast<std::uint8_t>(c.planes.size()));
  for (const auto& p : c.planes) {
    out.push_back(static_cast<std::uint8_t>(p.role));
    put_u32(out, static_cast<std::uint32_t>(p.payload.size()));
    out.insert(out.end(), p.payload.begin(), p.payload.end());
  }
  return out;
}

CodedContainer parse_container(std::span<const std::uint8_t> bytes) {
  Cursor in(bytes);
  auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw DecodeError("bad container magic", 0);
  }
  CodedContainer c;
  c.version = in.u8();
  if (c.version != CodedContainer::kVersion) {
    throw DecodeError("unsupported container version", 4);
  }
  const auto method = in.u8();
  const auto coder = in.u8();
  const auto interp = in.u8();
  if (method > 3) throw DecodeError("unknown method id", 5);
  if (coder > 1) throw DecodeError("unknown coder id", 6);
  if (interp > 3) throw DecodeError("unknown interpolation id", 7);
  c.method = static_cast<Method>(method);
  c.coder = static_cast<Coder>(coder);
  c.interp = static_cast<InterpMethod>(interp);
  c.width = in.u32();
  c.height = in.u32();
  c.block_w = in.u32();
  c.block_h = in.u32();
  const std::size_t count = in.u8();
  for (std::size_t i = 0; i < count; ++i) {
    CodedPlane p;
    const std::size_t at = in.pos();
    const auto role = in.u8();
    if (role > 2) throw DecodeError("unknown plane role", at);
    p.role = static_cast<PlaneRole>(role);
    const std::uint32_t len = in.u32();
    auto payload = in.take(len);
    p.payload.assign(payload.begin(), payload.end());
    c.planes.push_back(std::move(p));
  }
  if (in.remaining() != 0) throw DecodeError("trailing bytes after container", in.pos());
  return c;
}

void write_container(const std::string& path, const CodedContainer& c) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  const auto bytes = serialize(c);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed: " + path);
}

CodedContainer read_container(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return parse_container(bytes);
}

}  // namespace cfacomp
