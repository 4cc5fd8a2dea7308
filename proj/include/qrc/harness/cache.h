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
#include <optional>
#include <string>

#include "qrc/harness/config.h"

namespace qrc::harness {

/// Directory of cached embedding matrices (QRCEMB1 containers), named by a
/// SHA-256 key. QRC_CACHE_DIR, when set, replaces the configured directory.
class EmbeddingCache {
 public:
  EmbeddingCache(const std::filesystem::path& configured_dir, bool enabled);

  static std::filesystem::path resolve_dir(const std::filesystem::path& configured_dir);

  bool enabled() const { return enabled_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& key) const;

  /// Missing entries give nullopt; unreadable or corrupt ones are reported
  /// with a warning and also give nullopt.
  std::optional<Eigen::MatrixXd> load(const std::string& key) const;
  void store(const std::string& key, const Eigen::MatrixXd& matrix) const;

 private:
  std::filesystem::path dir_;
  bool enabled_;
};

/// Key of the reservoir embeddings of one split at one sweep point: covers
/// every setting that changes them, the dataset digest and the split name.
std::string embedding_cache_key(const ExperimentConfig& config, int n_atoms,
                                const std::string& dataset_digest, const std::string& split);

}  // namespace qrc::harness
