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

// MSB-first bit packing.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cfacomp {

class BitWriter {
 public:
  void put_bit(bool bit) {
    acc_ = static_cast<std::uint8_t>((acc_ << 1) | (bit ? 1 : 0));
    if (++fill_ == 8) {
      bytes_.push_back(acc_);
      acc_ = 0;
      fill_ = 0;
    }
    ++bit_count_;
  }

  // Writes the low `count` bits of `value`, most significant first.
  void put_bits(std::uint32_t value, int count) {
    for (int i = count - 1; i >= 0; --i) put_bit(((value >> i) & 1u) != 0);
  }

  std::size_t bit_count() const { return bit_count_; }

  // Pads the last partial byte with `pad_bit` and returns the buffer.
  std::vector<std::uint8_t> finish(bool pad_bit) {
    while (fill_ != 0) {
      put_bit(pad_bit);
      --bit_count_;
    }
    return std::move(bytes_);
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint8_t acc_ = 0;
  int fill_ = 0;
  std::size_t bit_count_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool exhausted() const { return pos_ >= bytes_.size() * 8; }
  std::size_t bits_left() const { return bytes_.size() * 8 - pos_; }
  std::size_t byte_offset() const { return pos_ / 8; }
  std::size_t bit_position() const { return pos_; }

  // Returns false, leaving `bit` untouched, once the input is exhausted.
  bool get_bit(bool& bit) {
    if (exhausted()) return false;
    bit = ((bytes_[pos_ / 8] >> (7 - (pos_ % 8))) & 1u) != 0;
    ++pos_;
    return true;
  }

  bool get_bits(int count, std::uint32_t& value) {
    if (bits_left() < static_cast<std::size_t>(count)) return false;
    value = 0;
    for (int i = 0; i < count; ++i) {
      bool b = false;
      get_bit(b);
      value = (value << 1) | (b ? 1u : 0u);
    }
    return true;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace cfacomp
