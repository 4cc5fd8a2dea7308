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

#include "qrc/harness/cache.h"

#include <cstdlib>

#include "qrc/encoding/matrix_container.h"
#include "qrc/error.h"
#include "qrc/harness/sha256.h"
#include "qrc/log.h"

namespace qrc::harness {

EmbeddingCache::EmbeddingCache(const std::filesystem::path& configured_dir, bool enabled)
    : dir_(resolve_dir(configured_dir)), enabled_(enabled) {}

std::filesystem::path EmbeddingCache::resolve_dir(const std::filesystem::path& configured_dir) {
  if (const char* env = std::getenv("QRC_CACHE_DIR"); env && *env) return env;
  return configured_dir;
}

std::filesystem::path EmbeddingCache::path_for(const std::string& key) const {
  return dir_ / (key + ".qrcemb");
}

std::optional<Eigen::MatrixXd> EmbeddingCache::load(const std::string& key) const {
  if (!enabled_) return std::nullopt;
  const auto path = path_for(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  try {
    return encoding::read_matrix_file(path, encoding::kEmbeddingMagic);
  } catch (const DataError& e) {
    log_warning("ignoring cache entry " + path.string() + ": " + e.what());
    return std::nullopt;
  }
}

void EmbeddingCache::store(const std::string& key, const Eigen::MatrixXd& matrix) const {
  if (!enabled_) return;
  try {
    encoding::write_matrix_file(path_for(key), encoding::kEmbeddingMagic, matrix);
  } catch (const DataError& e) {
    log_warning(std::string("cannot write cache entry: ") + e.what());
  }
}

std::string embedding_cache_key(const ExperimentConfig& config, int n_atoms,
                                const std::string& dataset_digest, const std::string& split) {
  static const char* kKeys[] = {
      "dataset",       "per_class",      "train_fraction",       "master_seed",
      "lattice_spacing", "c6",           "rabi_frequency",       "detuning_min",
      "detuning_max",  "local_modulation", "total_time",         "snapshots",
      "initial_state", "propagator",     "propagator_tolerance", "downsample_size",
      "patch_width",   "retained_dim",   "variance_threshold"};
  const auto canon = config.canonical();
  std::string text = "qrc-embedding/1\n";
  for (const char* k : kKeys) text += std::string(k) + "=" + canon.at(k) + "\n";
  text += "n_atoms=" + std::to_string(n_atoms) + "\nsplit=" + split + "\ndata=" + dataset_digest + "\n";
  return sha256_hex(text);
}

}  // namespace qrc::harness
