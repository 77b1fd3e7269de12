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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfacomp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Image dimensions or block sizes that the Bayer tiling cannot represent.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

// Inconsistent pipeline or coder configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A conversion matrix that cannot be inverted.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// A shape the shape-adaptive transform cannot handle (non-contiguous line).
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

// Malformed or truncated bitstream. Carries the byte offset where decoding
// gave up.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Unreadable or malformed image files.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cfacomp
