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
#include <vector>

#include "qrc/dynamics/propagator.h"
#include "qrc/dynamics/reservoir.h"
#include "qrc/dynamics/reservoir_config.h"
#include "qrc/encoding/detuning_map.h"
#include "qrc/encoding/downsample.h"
#include "qrc/encoding/pca.h"

namespace qrc::encoding {

struct PipelineConfig {
  int image_size = 28;       // L
  int downsample_size = 16;  // S
  int patch_width = 8;       // P
  /// delta; 0 selects n_atoms unless variance_threshold > 0.
  int retained_dim = 0;
  /// When > 0 (and retained_dim == 0) delta is chosen by retained variance.
  double variance_threshold = 0.0;
  dynamics::ReservoirConfig reservoir;
  dynamics::PropagatorOptions propagator;
  /// Finite-difference step in detuning units; <= 0 selects the default.
  double jacobian_step = 0.0;

  /// Throws ConfigError on an inconsistent configuration.
  void validate() const;
  int num_patches() const;
};

/// Image embedding and its Jacobian with respect to the L^2 input pixels.
struct EmbeddingWithJacobian {
  Eigen::VectorXd embedding;  // D
  Eigen::MatrixXd jacobian;   // D x L^2
};

/// Image -> area downsample -> patches -> PCA -> detunings -> reservoir ->
/// mean over patches. PCA and the detuning map are fitted once on the pooled
/// training patches and frozen afterwards. Every method is const and safe to
/// call concurrently.
class EncodingPipeline {
 public:
  /// Fits PCA and the detuning map on the training images (row-major L^2
  /// pixel vectors).
  static EncodingPipeline fit(const std::vector<Eigen::VectorXd>& train_images,
                              const PipelineConfig& config);

  EncodingPipeline(PipelineConfig config, PcaModel pca, DetuningMap map);

  const PipelineConfig& config() const { return config_; }
  const PcaModel& pca() const { return pca_; }
  const DetuningMap& detuning_map() const { return map_; }
  const AreaResampler& resampler() const { return resampler_; }

  int input_dim() const { return config_.image_size * config_.image_size; }
  int num_patches() const { return static_cast<int>(blocks_.size()); }
  int retained_dim() const { return pca_.retained_dim; }
  int embedding_dim() const { return config_.reservoir.embedding_dim(); }

  Eigen::VectorXd downsampled(const Eigen::VectorXd& pixels) const;

  /// kappa x delta PCA features, one patch per row.
  Eigen::MatrixXd patch_features(const Eigen::VectorXd& pixels) const;

  /// Detunings of patch v (length N): delta mapped features followed by
  /// detuning_min on the remaining atoms.
  std::vector<std::vector<double>> patch_detunings(const Eigen::VectorXd& pixels) const;

  /// Patch-averaged PCA features (length delta): the classical baseline input.
  Eigen::VectorXd classical_features(const Eigen::VectorXd& pixels) const;

  /// delta x L^2; the classical features are linear in the pixels.
  const Eigen::MatrixXd& classical_jacobian() const { return classical_jacobian_; }

  Eigen::VectorXd embed(const Eigen::VectorXd& pixels,
                        dynamics::PropagationStats* stats = nullptr) const;

  /// Embedding plus the D x L^2 chain-rule Jacobian. Linear stages are exact;
  /// the reservoir stage uses central differences (2 delta kappa evolutions,
  /// skipping dimensions where the detuning map is clamped).
  EmbeddingWithJacobian embed_with_jacobian(const Eigen::VectorXd& pixels,
                                            dynamics::PropagationStats* stats = nullptr) const;

  Eigen::MatrixXd pipeline_jacobian(const Eigen::VectorXd& pixels) const {
    return embed_with_jacobian(pixels).jacobian;
  }

  /// Embeddings of many images, one per row, parallel over (image, patch).
  Eigen::MatrixXd embed_batch(const std::vector<Eigen::VectorXd>& images) const;

  /// Classical features of many images, one per row.
  Eigen::MatrixXd classical_batch(const std::vector<Eigen::VectorXd>& images) const;

 private:
  void check_pixels(const Eigen::VectorXd& pixels) const;
  Eigen::VectorXd embed_patch(const std::vector<double>& detunings,
                              dynamics::PropagationStats* stats) const;

  PipelineConfig config_;
  AreaResampler resampler_;
  PcaModel pca_;
  DetuningMap map_;
  std::vector<int> patch_index_;
  // W^T A restricted to patch v: delta x L^2.
  std::vector<Eigen::MatrixXd> blocks_;
  Eigen::MatrixXd classical_jacobian_;
};

}  // namespace qrc::encoding
