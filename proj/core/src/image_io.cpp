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

#include "cfacomp/image_io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cfacomp {
namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!tok.empty()) break;
    } else {
      tok.push_back(static_cast<char>(c));
    }
    c = in.get();
  }
  if (tok.empty()) throw IoError("truncated netpbm header");
  return tok;
}

int parse_int(const std::string& tok) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 0) throw IoError("bad header field: " + tok);
    return v;
  } catch (const std::logic_error&) {
    throw IoError("bad header field: " + tok);
  }
}

struct NetpbmHeader {
  int width;
  int height;
};

NetpbmHeader read_header(std::istream& in, const char* magic) {
  if (next_token(in) != magic)
    throw IoError(std::string("expected netpbm magic ") + magic);
  NetpbmHeader h{parse_int(next_token(in)), parse_int(next_token(in))};
  int maxval = parse_int(next_token(in));
  if (maxval != 255) throw IoError("only 8-bit netpbm files are supported");
  return h;
}

std::vector<unsigned char> read_bytes(std::istream& in, std::size_t n) {
  std::vector<unsigned char> buf(n);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw IoError("truncated image data");
  return buf;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  return out;
}

}  // namespace

RgbImage read_ppm(std::istream& in) {
  auto h = read_header(in, "P6");
  RgbImage img(h.width, h.height);
  auto buf = read_bytes(in, img.samples().size());
  std::copy(buf.begin(), buf.end(), img.samples().begin());
  return img;
}

RgbImage read_ppm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_ppm(in);
}

void write_ppm(std::ostream& out, const RgbImage& img) {
  out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> buf;
  buf.reserve(img.samples().size());
  for (double v : img.samples()) buf.push_back(to_byte(v));
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
}

void write_ppm(const std::filesystem::path& path, const RgbImage& img) {
  auto out = open_out(path);
  write_ppm(out, img);
}

PlaneImage read_pgm(std::istream& in) {
  auto h = read_header(in, "P5");
  PlaneImage img(h.width, h.height);
  auto buf = read_bytes(in, img.size());
  std::copy(buf.begin(), buf.end(), img.samples().begin());
  return img;
}

PlaneImage read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const PlaneImage& img) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> buf;
  buf.reserve(img.size());
  for (double v : img.samples()) buf.push_back(to_byte(v));
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
}

void write_pgm(const std::filesystem::path& path, const PlaneImage& img) {
  auto out = open_out(path);
  write_pgm(out, img);
}

BayerImage read_cfa(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("missing CFA header");
  std::istringstream hdr(line);
  std::string magic, pattern;
  int width = 0, height = 0;
  if (!(hdr >> magic >> width >> height >> pattern) || magic != "CFA1")
    throw IoError("bad CFA header: " + line);
  if (pattern != "GRBG") throw IoError("unsupported CFA pattern " + pattern);
  BayerImage img(width, height);
  auto buf = read_bytes(in, img.size());
  std::copy(buf.begin(), buf.end(), img.samples().begin());
  return img;
}

BayerImage read_cfa(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_cfa(in);
}

void write_cfa(std::ostream& out, const BayerImage& img) {
  out << "CFA1 " << img.width() << ' ' << img.height() << " GRBG\n";
  std::vector<unsigned char> buf;
  buf.reserve(img.size());
  for (double v : img.samples()) buf.push_back(to_byte(v));
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
}

void write_cfa(const std::filesystem::path& path, const BayerImage& img) {
  auto out = open_out(path);
  write_cfa(out, img);
}

}  // namespace cfacomp
