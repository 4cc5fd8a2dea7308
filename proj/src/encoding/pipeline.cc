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

#include "qrc/encoding/pipeline.h"

#include <string>

#include "qrc/encoding/patches.h"
#include "qrc/error.h"
#include "qrc/parallel.h"

namespace qrc::encoding {

void PipelineConfig::validate() const {
  reservoir.validate();
  if (image_size <= 0) throw ConfigError("image_size must be positive");
  if (downsample_size <= 0 || downsample_size > image_size) {
    throw ConfigError("downsample_size must lie in [1, image_size]");
  }
  require_patch_grid(downsample_size, patch_width);
  if (retained_dim < 0) throw ConfigError("retained_dim must be >= 0");
  if (retained_dim > reservoir.n_atoms) {
    throw ConfigError("retained_dim " + std::to_string(retained_dim) +
                      " exceeds the atom count " + std::to_string(reservoir.n_atoms));
  }
  if (retained_dim > patch_width * patch_width) {
    throw ConfigError("retained_dim exceeds the patch dimension");
  }
  if (variance_threshold < 0.0 || variance_threshold >= 1.0) {
    throw ConfigError("variance_threshold must lie in [0, 1)");
  }
}

int PipelineConfig::num_patches() const {
  const int g = downsample_size / patch_width;
  return g * g;
}

EncodingPipeline EncodingPipeline::fit(const std::vector<Eigen::VectorXd>& train_images,
                                       const PipelineConfig& config) {
  config.validate();
  if (train_images.empty()) throw ConfigError("cannot fit the pipeline without training images");
  const AreaResampler resampler(config.image_size, config.downsample_size);
  const int kappa = config.num_patches();
  const int len = config.patch_width * config.patch_width;

  Eigen::MatrixXd pooled(static_cast<Eigen::Index>(train_images.size()) * kappa, len);
  for (std::size_t n = 0; n < train_images.size(); ++n) {
    require_valid_pixels(train_images[n], config.image_size);
    const PatchSet set =
        extract_patches(resampler.apply(train_images[n]), config.downsample_size, config.patch_width);
    for (int v = 0; v < kappa; ++v) pooled.row(n * kappa + v) = set.patches[v].transpose();
  }

  PcaSelection selection;
  if (config.retained_dim > 0) {
    selection.retained_dim = config.retained_dim;
  } else if (config.variance_threshold > 0.0) {
    selection.variance_threshold = config.variance_threshold;
  } else {
    selection.retained_dim = std::min(config.reservoir.n_atoms, len);
  }
  PcaModel pca = fit_pca(pooled, selection);
  if (pca.retained_dim > config.reservoir.n_atoms) {
    throw ConfigError("variance threshold selects " + std::to_string(pca.retained_dim) +
                      " components, more than the " + std::to_string(config.reservoir.n_atoms) +
                      " atoms");
  }
  const Eigen::MatrixXd features =
      (pooled.rowwise() - pca.mean.transpose()) * pca.components;
  DetuningMap map = DetuningMap::fit(features, config.reservoir.detuning_min,
                                     config.reservoir.detuning_max);
  return EncodingPipeline(config, std::move(pca), std::move(map));
}

EncodingPipeline::EncodingPipeline(PipelineConfig config, PcaModel pca, DetuningMap map)
    : config_(std::move(config)),
      resampler_(config_.image_size, config_.downsample_size),
      pca_(std::move(pca)),
      map_(std::move(map)) {
  config_.validate();
  const int len = config_.patch_width * config_.patch_width;
  if (pca_.input_dim() != len || pca_.components.rows() != len ||
      pca_.components.cols() != pca_.retained_dim) {
    throw ConfigError("PCA model does not match the patch width");
  }
  if (pca_.retained_dim < 1 || pca_.retained_dim > config_.reservoir.n_atoms) {
    throw ConfigError("PCA dimension must lie in [1, n_atoms]");
  }
  if (map_.dim() != pca_.retained_dim) throw ConfigError("detuning map dimension mismatch");

  patch_index_ = patch_pixel_indices(config_.downsample_size, config_.patch_width);
  const Eigen::MatrixXd a = resampler_.matrix();
  const int kappa = config_.num_patches();
  Eigen::MatrixXd rows(len, a.cols());
  blocks_.reserve(kappa);
  classical_jacobian_ = Eigen::MatrixXd::Zero(pca_.retained_dim, a.cols());
  for (int v = 0; v < kappa; ++v) {
    for (int e = 0; e < len; ++e) rows.row(e) = a.row(patch_index_[v * len + e]);
    blocks_.push_back(pca_.components.transpose() * rows);
    classical_jacobian_ += blocks_.back();
  }
  classical_jacobian_ /= static_cast<double>(kappa);
}

void EncodingPipeline::check_pixels(const Eigen::VectorXd& pixels) const {
  if (pixels.size() != input_dim()) {
    throw ConfigError("pipeline input has " + std::to_string(pixels.size()) +
                      " pixels, expected " + std::to_string(input_dim()));
  }
}

Eigen::VectorXd EncodingPipeline::downsampled(const Eigen::VectorXd& pixels) const {
  check_pixels(pixels);
  return resampler_.apply(pixels);
}

Eigen::MatrixXd EncodingPipeline::patch_features(const Eigen::VectorXd& pixels) const {
  const Eigen::VectorXd small = downsampled(pixels);
  const int len = config_.patch_width * config_.patch_width;
  const int kappa = num_patches();
  Eigen::MatrixXd out(kappa, pca_.retained_dim);
  Eigen::VectorXd patch(len);
  for (int v = 0; v < kappa; ++v) {
    for (int e = 0; e < len; ++e) patch[e] = small[patch_index_[v * len + e]];
    out.row(v) = pca_.project(patch).transpose();
  }
  return out;
}

std::vector<std::vector<double>> EncodingPipeline::patch_detunings(
    const Eigen::VectorXd& pixels) const {
  const Eigen::MatrixXd features = patch_features(pixels);
  const int n = config_.reservoir.n_atoms;
  std::vector<std::vector<double>> out(features.rows(),
                                       std::vector<double>(n, config_.reservoir.detuning_min));
  for (Eigen::Index v = 0; v < features.rows(); ++v) {
    const Eigen::VectorXd d = map_.map(features.row(v).transpose());
    for (Eigen::Index i = 0; i < d.size(); ++i) out[v][i] = d[i];
  }
  return out;
}

Eigen::VectorXd EncodingPipeline::classical_features(const Eigen::VectorXd& pixels) const {
  return patch_features(pixels).colwise().mean().transpose();
}

Eigen::VectorXd EncodingPipeline::embed_patch(const std::vector<double>& detunings,
                                              dynamics::PropagationStats* stats) const {
  return dynamics::reservoir_embed(config_.reservoir, detunings, config_.propagator, stats);
}

Eigen::VectorXd EncodingPipeline::embed(const Eigen::VectorXd& pixels,
                                        dynamics::PropagationStats* stats) const {
  const auto detunings = patch_detunings(pixels);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(embedding_dim());
  for (const auto& d : detunings) sum += embed_patch(d, stats);
  return sum / static_cast<double>(detunings.size());
}

EmbeddingWithJacobian EncodingPipeline::embed_with_jacobian(
    const Eigen::VectorXd& pixels, dynamics::PropagationStats* stats) const {
  const Eigen::MatrixXd features = patch_features(pixels);
  const int kappa = num_patches();
  const int delta = pca_.retained_dim;
  const int n = config_.reservoir.n_atoms;

  struct PatchResult {
    Eigen::VectorXd embedding;
    Eigen::MatrixXd jacobian;  // D x L^2 contribution
    dynamics::PropagationStats stats;
  };
  const auto results = parallel_map<PatchResult>(kappa, [&](std::size_t v) {
    PatchResult r;
    const Eigen::VectorXd f = features.row(v).transpose();
    const Eigen::VectorXd mapped = map_.map(f);
    const Eigen::VectorXd slope = map_.jacobian_diagonal(f);
    std::vector<double> det(n, config_.reservoir.detuning_min);
    for (int i = 0; i < delta; ++i) det[i] = mapped[i];

    dynamics::JacobianOptions jo;
    jo.step = config_.jacobian_step;
    jo.active = delta;
    jo.mask.resize(delta);
    for (int i = 0; i < delta; ++i) jo.mask[i] = slope[i] != 0.0;
    jo.propagator = config_.propagator;

    r.embedding = embed_patch(det, &r.stats);
    const Eigen::MatrixXd jr = dynamics::reservoir_jacobian(config_.reservoir, det, jo, &r.stats);
    r.jacobian = (jr * slope.asDiagonal()) * blocks_[v];
    return r;
  });

  EmbeddingWithJacobian out{Eigen::VectorXd::Zero(embedding_dim()),
                            Eigen::MatrixXd::Zero(embedding_dim(), input_dim())};
  for (const PatchResult& r : results) {
    out.embedding += r.embedding;
    out.jacobian += r.jacobian;
    if (stats) {
      stats->matvecs += r.stats.matvecs;
      stats->substeps += r.stats.substeps;
      stats->fallbacks += r.stats.fallbacks;
    }
  }
  out.embedding /= static_cast<double>(kappa);
  out.jacobian /= static_cast<double>(kappa);
  return out;
}

Eigen::MatrixXd EncodingPipeline::embed_batch(const std::vector<Eigen::VectorXd>& images) const {
  const int kappa = num_patches();
  std::vector<std::vector<std::vector<double>>> detunings(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) detunings[i] = patch_detunings(images[i]);
  const auto parts = parallel_map<Eigen::VectorXd>(images.size() * kappa, [&](std::size_t k) {
    return embed_patch(detunings[k / kappa][k % kappa], nullptr);
  });
  Eigen::MatrixXd out(static_cast<Eigen::Index>(images.size()), embedding_dim());
  for (std::size_t i = 0; i < images.size(); ++i) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(embedding_dim());
    for (int v = 0; v < kappa; ++v) sum += parts[i * kappa + v];
    out.row(i) = (sum / static_cast<double>(kappa)).transpose();
  }
  return out;
}

Eigen::MatrixXd EncodingPipeline::classical_batch(
    const std::vector<Eigen::VectorXd>& images) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(images.size()), pca_.retained_dim);
  for (std::size_t i = 0; i < images.size(); ++i) {
    out.row(i) = classical_features(images[i]).transpose();
  }
  return out;
}

}  // namespace qrc::encoding
