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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/attacks/attacks.h"
#include "qrc/dynamics/propagator.h"
#include "qrc/dynamics/reservoir_config.h"
#include "qrc/encoding/pipeline.h"
#include "qrc/readout/mlp.h"

namespace qrc::harness {

/// Model names used in reports.
inline constexpr const char* kQrcModel = "qrc_mlp";                     // reservoir + MLP, chained gradients
inline constexpr const char* kMlpModel = "mlp";                         // patch-averaged PCA features + MLP
inline constexpr const char* kQrcEmbeddingModel = "qrc_mlp_embedding";  // reservoir + MLP, attacked on embeddings
inline constexpr const char* kPixelModel = "mlp_pixels";                // downsampled pixels + MLP

/// Every setting of an experiment. Parsed from a flat "key = value" text
/// file; see format_config() for the full key list with defaults.
struct ExperimentConfig {
  std::string dataset = "mnist";
  std::filesystem::path train_images;
  std::filesystem::path train_labels;
  std::string images_sha256;  // verified when non-empty
  std::string labels_sha256;
  int per_class = 100;
  double train_fraction = 0.7;
  std::uint64_t master_seed = 0;

  std::vector<int> n_sweep{8};
  /// Reservoir template; n_atoms and local_modulation are set per sweep point.
  dynamics::ReservoirConfig reservoir;
  std::vector<double> local_modulation{0.15};  // one value is broadcast
  dynamics::PropagatorOptions propagator;

  int downsample_size = 16;
  int patch_width = 8;
  int retained_dim = 0;  // 0: delta = N
  double variance_threshold = 0.0;
  double jacobian_step = 0.0;

  std::vector<int> hidden_layers{64, 32};
  double dropout = 1e-3;
  readout::TrainConfig train;  // seed is derived from master_seed

  std::vector<std::string> models{kQrcModel, kMlpModel};
  std::vector<attacks::AttackFamily> attacks{attacks::AttackFamily::kFgsm,
                                             attacks::AttackFamily::kPgd,
                                             attacks::AttackFamily::kDeepFool};
  double epsilon_max = 0.1;
  int epsilon_points = 11;
  int attack_steps = 100;
  double attack_step_size = 1e-3;
  double deepfool_overshoot = 1.02;
  bool pgd_random_start = false;
  /// Sweep points at which attacks run; empty means all of n_sweep.
  std::vector<int> attack_n_sweep;
  /// Evaluation subset per attack family: the first k test samples of every
  /// class (0 = whole test split).
  int eval_per_class_fgsm = 0;
  int eval_per_class_pgd = 0;
  int eval_per_class_deepfool = 0;

  std::filesystem::path cache_dir = ".qrc_cache";
  bool use_cache = true;
  bool dump_adversarial = false;

  /// epsilon_points values k * epsilon_max / (epsilon_points - 1), each
  /// rounded to the nearest double of its 12-digit decimal form.
  std::vector<double> epsilon_grid() const;

  /// Reservoir parameters for a sweep point.
  dynamics::ReservoirConfig reservoir_for(int n_atoms) const;
  encoding::PipelineConfig pipeline_for(int n_atoms) const;
  std::vector<int> attack_points() const;
  int eval_per_class(attacks::AttackFamily family) const;
  bool has_model(const std::string& name) const;

  /// Throws ConfigError.
  void validate() const;

  /// Every key with its canonical value (numbers with 17 significant digits).
  std::map<std::string, std::string> canonical() const;

  /// SHA-256 of the canonical key/value text, excluding file locations and
  /// cache settings.
  std::string hash() const;
};

/// Sets one key from its text value; accepts "2pi*x" for angular
/// frequencies. Throws ConfigError on an unknown key or a bad value.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Parses "key = value" lines; '#' starts a comment. Relative paths are
/// resolved against base_dir.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form, parseable by parse_config.
std::string format_config(const ExperimentConfig& config);

/// %.17g.
std::string format_double(double v);

/// Keys that do not enter the config hash.
bool is_location_key(const std::string& key);

}  // namespace qrc::harness
