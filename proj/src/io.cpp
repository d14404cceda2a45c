// Copyright 2026 The nbmf-anneal Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "nbmf/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <vector>

#include "nbmf/error.hpp"

namespace nbmf {

namespace fs = std::filesystem;

MatrixFormat parse_format(std::string_view name) {
  if (name == "csv") return MatrixFormat::csv;
  if (name == "binary") return MatrixFormat::binary;
  if (name == "pgm-dir") return MatrixFormat::pgm_dir;
  throw ConfigError("unknown matrix format '" + std::string(name) +
                    "' (expected csv, binary or pgm-dir)");
}

const char* to_string(MatrixFormat format) {
  switch (format) {
    case MatrixFormat::csv: return "csv";
    case MatrixFormat::binary: return "binary";
    case MatrixFormat::pgm_dir: return "pgm-dir";
  }
  return "unknown";
}

namespace {

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

DenseMatrix parse_csv(std::string_view text, const std::string& source) {
  std::vector<double> values;
  Eigen::Index cols = -1;
  Eigen::Index rows = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;

    Eigen::Index count = 0;
    std::size_t field_no = 0;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view field = trim(line.substr(0, comma));
      ++field_no;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw DataError(source + ":" + std::to_string(line_no) + ": field " +
                        std::to_string(field_no) + " is not a number: '" + std::string(field) +
                        "'");
      values.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (cols < 0) cols = count;
    if (count != cols)
      throw DataError(source + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(cols) + " fields, found " + std::to_string(count));
    ++rows;
  }
  if (rows == 0) throw DataError(source + ": no data rows");
  return Eigen::Map<DenseMatrix>(values.data(), rows, cols);
}

DenseMatrix read_csv(const fs::path& path) { return parse_csv(read_all(path), path.string()); }

void write_csv(const fs::path& path, const DenseMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

namespace {

constexpr std::array<char, 4> kMagic{'N', 'B', 'M', 'F'};
constexpr std::uint16_t kBinaryVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 2 + 4 + 4;

template <typename T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const std::string& in, std::size_t offset) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<T>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  return v;
}

}  // namespace

DenseMatrix read_binary(const fs::path& path) {
  const std::string bytes = read_all(path);
  const std::string where = path.string();
  if (bytes.size() < kHeaderBytes)
    throw DataError(where + ": truncated header (" + std::to_string(bytes.size()) + " bytes)");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin()))
    throw DataError(where + ": bad magic at offset 0 (expected NBMF)");
  const auto version = get_le<std::uint16_t>(bytes, 4);
  if (version != kBinaryVersion)
    throw DataError(where + ": unsupported version " + std::to_string(version) + " at offset 4");
  const auto rows = get_le<std::uint32_t>(bytes, 6);
  const auto cols = get_le<std::uint32_t>(bytes, 10);
  if (rows == 0 || cols == 0) throw DataError(where + ": zero dimension in header");
  const std::size_t expected = kHeaderBytes + std::size_t{rows} * cols * 8;
  if (bytes.size() != expected)
    throw DataError(where + ": expected " + std::to_string(expected) + " bytes for " +
                    shape_string(rows, cols) + ", found " + std::to_string(bytes.size()));
  DenseMatrix m(rows, cols);
  std::size_t offset = kHeaderBytes;
  for (Eigen::Index i = 0; i < m.size(); ++i, offset += 8)
    m.data()[i] = std::bit_cast<double>(get_le<std::uint64_t>(bytes, offset));
  return m;
}

void write_binary(const fs::path& path, const DenseMatrix& m) {
  if (m.rows() > 0xffffffffLL || m.cols() > 0xffffffffLL)
    throw DataError("write_binary: matrix too large for u32 dims");
  std::string out(kMagic.begin(), kMagic.end());
  put_le<std::uint16_t>(out, kBinaryVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.rows()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.size(); ++i)
    put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(m.data()[i]));
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot open " + path.string() + " for writing");
  f << out;
  if (!f) throw DataError("write failed: " + path.string());
}

namespace {

struct Pgm {
  std::size_t width = 0, height = 0;
  std::vector<double> pixels;  // scaled to [0, 1]
};

Pgm parse_pgm(const std::string& bytes, const std::string& where) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_uint = [&](const char* what) {
    skip_space();
    const std::size_t start = pos;
    std::size_t v = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos])))
      v = v * 10 + static_cast<std::size_t>(bytes[pos++] - '0');
    if (pos == start)
      throw DataError(where + ": expected " + what + " at offset " + std::to_string(start));
    return v;
  };

  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
    throw DataError(where + ": not a binary (P5) PGM at offset 0");
  pos = 2;
  Pgm img;
  img.width = read_uint("width");
  img.height = read_uint("height");
  const std::size_t maxval = read_uint("maxval");
  if (img.width == 0 || img.height == 0) throw DataError(where + ": zero image dimension");
  if (maxval == 0 || maxval > 65535)
    throw DataError(where + ": maxval " + std::to_string(maxval) + " outside [1, 65535]");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
    throw DataError(where + ": missing whitespace after maxval at offset " + std::to_string(pos));
  ++pos;

  const std::size_t bpp = maxval < 256 ? 1 : 2;
  const std::size_t count = img.width * img.height;
  if (bytes.size() - pos < count * bpp)
    throw DataError(where + ": pixel data truncated at offset " + std::to_string(bytes.size()));
  img.pixels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t v = static_cast<unsigned char>(bytes[pos]);
    if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(bytes[pos + 1]);
    pos += bpp;
    if (v > maxval)
      throw DataError(where + ": pixel exceeds maxval at offset " + std::to_string(pos - bpp));
    img.pixels[i] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return img;
}

std::vector<fs::path> pgm_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".pgm") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return files;
}

}  // namespace

DenseMatrix read_pgm_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
  const auto files = pgm_files(dir);
  if (files.empty()) throw DataError(dir.string() + ": no .pgm files");

  DenseMatrix m;
  std::size_t width = 0, height = 0;
  for (std::size_t c = 0; c < files.size(); ++c) {
    const Pgm img = parse_pgm(read_all(files[c]), files[c].string());
    if (c == 0) {
      width = img.width;
      height = img.height;
      m.resize(static_cast<Eigen::Index>(width * height), static_cast<Eigen::Index>(files.size()));
    } else if (img.width != width || img.height != height) {
      throw DataError(files[c].string() + ": image is " + shape_string(img.width, img.height) +
                      " but " + files[0].filename().string() + " is " +
                      shape_string(width, height));
    }
    for (std::size_t p = 0; p < img.pixels.size(); ++p)
      m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c)) = img.pixels[p];
  }
  return m;
}

DenseMatrix ingest(const fs::path& path, MatrixFormat format) {
  if (!fs::exists(path)) throw DataError("input not found: " + path.string());
  switch (format) {
    case MatrixFormat::csv: return read_csv(path);
    case MatrixFormat::binary: return read_binary(path);
    case MatrixFormat::pgm_dir: return read_pgm_dir(path);
  }
  throw ConfigError("unknown format");
}

void export_matrix(const fs::path& path, const DenseMatrix& m, MatrixFormat format) {
  switch (format) {
    case MatrixFormat::csv: write_csv(path, m); return;
    case MatrixFormat::binary: write_binary(path, m); return;
    case MatrixFormat::pgm_dir: throw ConfigError("pgm-dir is an input-only format");
  }
}

std::string fingerprint(const fs::path& path) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("fingerprint: SHA-256 unavailable");
  auto feed = [&](const std::string& s) { EVP_DigestUpdate(ctx.get(), s.data(), s.size()); };

  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      feed(f.filename().string());
      feed(std::string(1, '\0'));
      const std::string body = read_all(f);
      feed(std::to_string(body.size()) + ":");
      feed(body);
    }
  } else {
    feed(read_all(path));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

}  // namespace nbmf
