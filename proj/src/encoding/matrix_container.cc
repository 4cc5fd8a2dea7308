// Copyright 2026 The qrc-robustness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrc/encoding/matrix_container.h"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "qrc/error.h"

namespace qrc::encoding {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFFU));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFFU));
}

std::uint32_t get_u32(std::string_view in, std::size_t at) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + k])) << (8 * k);
  return v;
}

std::uint64_t get_u64(std::string_view in, std::size_t at) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + k])) << (8 * k);
  return v;
}

std::string magic_text(std::string_view m) {
  std::string s;
  for (char c : m) {
    if (c == '\0') {
      s += "\\0";
    } else if (c >= 32 && c < 127) {
      s += c;
    } else {
      s += '?';
    }
  }
  return s;
}

}  // namespace

std::uint32_t crc32_bytes(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t chunk = std::min<std::size_t>(bytes.size() - pos, 1U << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + pos), static_cast<uInt>(chunk));
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::string encode_matrix(const Magic& magic, const Eigen::MatrixXd& matrix) {
  if (matrix.rows() > 0xFFFFFFFFLL || matrix.cols() > 0xFFFFFFFFLL) {
    throw ConfigError("matrix too large for the container");
  }
  std::string out(magic.begin(), magic.end());
  put_u32(out, static_cast<std::uint32_t>(matrix.rows()));
  put_u32(out, static_cast<std::uint32_t>(matrix.cols()));
  const std::size_t start = out.size();
  out.reserve(start + 8 * static_cast<std::size_t>(matrix.size()) + 4);
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) put_u64(out, std::bit_cast<std::uint64_t>(matrix(r, c)));
  }
  put_u32(out, crc32_bytes(std::string_view(out).substr(start)));
  return out;
}

Eigen::MatrixXd decode_matrix(std::string_view bytes, const Magic& magic) {
  if (bytes.size() < 16) {
    throw DataError(DataError::Kind::kTruncated, "matrix container shorter than its header");
  }
  if (std::memcmp(bytes.data(), magic.data(), magic.size()) != 0) {
    throw DataError(DataError::Kind::kBadMagic,
                    "bad container magic \"" + magic_text(bytes.substr(0, 8)) + "\", expected \"" +
                        magic_text(std::string_view(magic.data(), magic.size())) + "\"");
  }
  const std::uint64_t rows = get_u32(bytes, 8);
  const std::uint64_t cols = get_u32(bytes, 12);
  const std::uint64_t payload = rows * cols * 8;
  if (bytes.size() < 16 + payload + 4) {
    throw DataError(DataError::Kind::kTruncated, "matrix container payload is truncated");
  }
  if (bytes.size() != 16 + payload + 4) {
    throw DataError(DataError::Kind::kFormat, "trailing bytes after the matrix container");
  }
  const std::uint32_t stored = get_u32(bytes, 16 + payload);
  if (stored != crc32_bytes(bytes.substr(16, payload))) {
    throw DataError(DataError::Kind::kChecksum, "matrix container checksum mismatch");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t at = 16;
  for (std::uint64_t r = 0; r < rows; ++r) {
    for (std::uint64_t c = 0; c < cols; ++c, at += 8) m(r, c) = std::bit_cast<double>(get_u64(bytes, at));
  }
  return m;
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(DataError::Kind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError(DataError::Kind::kIo, "cannot read " + path.string());
  return ss.str();
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(DataError::Kind::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError(DataError::Kind::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError(DataError::Kind::kIo, "cannot rename into " + path.string() + ": " + ec.message());
}

void write_matrix_file(const std::filesystem::path& path, const Magic& magic,
                       const Eigen::MatrixXd& matrix) {
  write_file_bytes(path, encode_matrix(magic, matrix));
}

Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path, const Magic& magic) {
  return decode_matrix(read_file_bytes(path), magic);
}

Eigen::MatrixXd pca_to_matrix(const PcaModel& model) {
  const Eigen::Index len = model.mean.size();
  const int delta = model.retained_dim;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(len + 1, delta + 2);
  m(0, 0) = delta;
  m(0, 1) = model.variance_threshold;
  m.block(1, 0, len, 1) = model.mean;
  m.block(1, 1, len, 1) = model.eigenvalues;
  m.block(1, 2, len, delta) = model.components;
  return m;
}

PcaModel pca_from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() < 2 || m.cols() < 2) throw DataError(DataError::Kind::kFormat, "PCA container too small");
  const int delta = static_cast<int>(m(0, 0));
  if (delta < 0 || delta + 2 != m.cols() || static_cast<double>(delta) != m(0, 0)) {
    throw DataError(DataError::Kind::kFormat, "PCA container has an inconsistent dimension");
  }
  const Eigen::Index len = m.rows() - 1;
  PcaModel model;
  model.retained_dim = delta;
  model.variance_threshold = m(0, 1);
  model.mean = m.block(1, 0, len, 1);
  model.eigenvalues = m.block(1, 1, len, 1);
  model.components = m.block(1, 2, len, delta);
  return model;
}

}  // namespace qrc::encoding
