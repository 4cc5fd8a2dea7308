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

#include "qrc/harness/idx.h"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qrc/error.h"

namespace qrc::harness {
namespace {

std::uint32_t read_be32(std::string_view b, std::size_t at) {
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) << 24) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3]));
}

void put_be32(std::string& out, std::uint32_t v) {
  for (int k = 3; k >= 0; --k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFFU));
}

std::string hex_magic(std::uint32_t m) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%08X", m);
  return buf;
}

void expect_magic(std::string_view bytes, std::uint32_t magic, const char* what) {
  if (bytes.size() < 4) throw DataError(DataError::Kind::kTruncated, std::string("IDX ") + what + " file is shorter than its magic");
  const std::uint32_t got = read_be32(bytes, 0);
  if (got != magic) {
    throw DataError(DataError::Kind::kBadMagic, std::string("IDX ") + what + " file has magic " +
                                                    hex_magic(got) + ", expected " + hex_magic(magic));
  }
}

}  // namespace

int LabeledImages::num_classes() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

LabeledImages parse_idx_images(std::string_view bytes) {
  expect_magic(bytes, kIdxImageMagic, "image");
  if (bytes.size() < 16) throw DataError(DataError::Kind::kTruncated, "IDX image header is truncated");
  const std::uint64_t count = read_be32(bytes, 4);
  const std::uint64_t rows = read_be32(bytes, 8);
  const std::uint64_t cols = read_be32(bytes, 12);
  if (rows != cols || rows == 0) {
    throw DataError(DataError::Kind::kFormat, "IDX images must be square, got " +
                                                  std::to_string(rows) + "x" + std::to_string(cols));
  }
  const std::uint64_t pixels = rows * cols;
  if (bytes.size() - 16 < count * pixels) {
    throw DataError(DataError::Kind::kTruncated,
                    "IDX image payload holds " + std::to_string(bytes.size() - 16) + " bytes, expected " +
                        std::to_string(count * pixels));
  }
  LabeledImages out;
  out.side = static_cast<int>(rows);
  out.images.reserve(count);
  std::size_t at = 16;
  for (std::uint64_t n = 0; n < count; ++n) {
    Eigen::VectorXd img(static_cast<Eigen::Index>(pixels));
    for (std::uint64_t p = 0; p < pixels; ++p) img[p] = static_cast<unsigned char>(bytes[at++]) / 255.0;
    out.images.push_back(std::move(img));
  }
  return out;
}

std::vector<int> parse_idx_labels(std::string_view bytes) {
  expect_magic(bytes, kIdxLabelMagic, "label");
  if (bytes.size() < 8) throw DataError(DataError::Kind::kTruncated, "IDX label header is truncated");
  const std::uint64_t count = read_be32(bytes, 4);
  if (bytes.size() - 8 < count) {
    throw DataError(DataError::Kind::kTruncated,
                    "IDX label payload holds " + std::to_string(bytes.size() - 8) + " bytes, expected " +
                        std::to_string(count));
  }
  std::vector<int> labels(count);
  for (std::uint64_t n = 0; n < count; ++n) labels[n] = static_cast<unsigned char>(bytes[8 + n]);
  return labels;
}

std::string read_maybe_gzip(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (!f) throw DataError(DataError::Kind::kIo, "cannot open " + path.string());
  std::string out;
  char buf[1 << 16];
  for (;;) {
    const int n = gzread(f, buf, sizeof buf);
    if (n < 0) {
      int err = 0;
      const std::string msg = gzerror(f, &err);
      gzclose(f);
      throw DataError(DataError::Kind::kIo, "cannot read " + path.string() + ": " + msg);
    }
    if (n == 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  gzclose(f);
  return out;
}

LabeledImages load_idx(const std::filesystem::path& images, const std::filesystem::path& labels) {
  LabeledImages data = parse_idx_images(read_maybe_gzip(images));
  data.labels = parse_idx_labels(read_maybe_gzip(labels));
  if (data.labels.size() != data.images.size()) {
    throw DataError(DataError::Kind::kCountMismatch,
                    std::to_string(data.images.size()) + " images but " +
                        std::to_string(data.labels.size()) + " labels");
  }
  return data;
}

std::string encode_idx_images(const LabeledImages& data) {
  std::string out;
  put_be32(out, kIdxImageMagic);
  put_be32(out, static_cast<std::uint32_t>(data.images.size()));
  put_be32(out, static_cast<std::uint32_t>(data.side));
  put_be32(out, static_cast<std::uint32_t>(data.side));
  for (const auto& img : data.images) {
    for (Eigen::Index p = 0; p < img.size(); ++p) {
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(img[p], 0.0, 1.0) * 255.0))));
    }
  }
  return out;
}

std::string encode_idx_labels(const std::vector<int>& labels) {
  std::string out;
  put_be32(out, kIdxLabelMagic);
  put_be32(out, static_cast<std::uint32_t>(labels.size()));
  for (int l : labels) out.push_back(static_cast<char>(static_cast<unsigned char>(l)));
  return out;
}

}  // namespace qrc::harness
