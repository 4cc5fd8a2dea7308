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
#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "qrc/encoding/pca.h"

namespace qrc::encoding {

/// Binary matrix file: 8 magic bytes, u32 rows, u32 cols, rows*cols f64
/// values row-major, then the CRC-32 of the value bytes. Integers and floats
/// are little-endian.
using Magic = std::array<char, 8>;

inline constexpr Magic kEmbeddingMagic{'Q', 'R', 'C', 'E', 'M', 'B', '1', '\0'};
inline constexpr Magic kPcaMagic{'Q', 'R', 'C', 'P', 'C', 'A', '1', '\0'};
inline constexpr Magic kCheckpointMagic{'Q', 'R', 'C', 'M', 'L', 'P', '1', '\0'};
inline constexpr Magic kAdversarialMagic{'Q', 'R', 'C', 'A', 'D', 'V', '1', '\0'};

/// CRC-32 (zlib polynomial) of a byte range.
std::uint32_t crc32_bytes(std::string_view bytes);

std::string encode_matrix(const Magic& magic, const Eigen::MatrixXd& matrix);

/// Throws DataError (kBadMagic, kTruncated, kChecksum, kFormat).
Eigen::MatrixXd decode_matrix(std::string_view bytes, const Magic& magic);

/// Writes through a temporary file and renames it into place.
void write_matrix_file(const std::filesystem::path& path, const Magic& magic,
                       const Eigen::MatrixXd& matrix);
Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path, const Magic& magic);

/// Reads a whole file; throws DataError(kIo).
std::string read_file_bytes(const std::filesystem::path& path);
/// Atomic write via temporary file and rename; throws DataError(kIo).
void write_file_bytes(const std::filesystem::path& path, std::string_view bytes);

/// PCA packed as a (P^2 + 1) x (delta + 2) matrix: row 0 holds
/// [delta, variance_threshold, 0...]; row k+1 holds
/// [mean_k, eigenvalue_k, W_k1 ... W_kdelta].
Eigen::MatrixXd pca_to_matrix(const PcaModel& model);
PcaModel pca_from_matrix(const Eigen::MatrixXd& matrix);

}  // namespace qrc::encoding
