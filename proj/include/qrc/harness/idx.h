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

#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qrc::harness {

/// Square grayscale images with integer labels. Pixels are row-major and
/// scaled from u8 to [0, 1] by 1/255.
struct LabeledImages {
  int side = 0;
  std::vector<Eigen::VectorXd> images;
  std::vector<int> labels;

  std::size_t size() const { return images.size(); }
  int num_classes() const;
};

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

/// Parses an IDX image file (magic 0x00000803, big-endian count, rows, cols,
/// u8 pixels). Throws DataError: kBadMagic, kTruncated, kFormat.
LabeledImages parse_idx_images(std::string_view bytes);

/// Parses an IDX label file (magic 0x00000801, big-endian count, u8 labels).
std::vector<int> parse_idx_labels(std::string_view bytes);

/// Reads a file, transparently inflating gzip. Throws DataError(kIo).
std::string read_maybe_gzip(const std::filesystem::path& path);

/// Loads an image file and a label file and pairs them. Throws
/// DataError(kCountMismatch) when the counts differ.
LabeledImages load_idx(const std::filesystem::path& images, const std::filesystem::path& labels);

/// Serialises images (pixels rounded to u8) and labels in IDX format.
std::string encode_idx_images(const LabeledImages& data);
std::string encode_idx_labels(const std::vector<int>& labels);

}  // namespace qrc::harness
