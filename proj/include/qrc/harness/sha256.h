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

#include <filesystem>
#include <string>
#include <string_view>

namespace qrc::harness {

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

/// Digest of a file's raw bytes. Throws DataError(kIo).
std::string sha256_file(const std::filesystem::path& path);

}  // namespace qrc::harness
