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

#include "qrc/attacks/models.h"

#include <string>

#include "qrc/error.h"

namespace qrc::attacks {
namespace {

void check_dim(const Eigen::VectorXd& x, int dim) {
  if (x.size() != dim) {
    throw ConfigError("classifier input has length " + std::to_string(x.size()) + ", expected " +
                      std::to_string(dim));
  }
}

}  // namespace

int Classifier::predict(const Eigen::VectorXd& x) const { return readout::argmax(logits(x)); }

AffineClassifier::AffineClassifier(Eigen::MatrixXd weight, Eigen::VectorXd bias,
                                   std::pair<double, double> bounds)
    : weight_(std::move(weight)), bias_(std::move(bias)), bounds_(bounds) {
  if (bias_.size() != weight_.rows() || weight_.rows() < 1) {
    throw ConfigError("affine classifier shape mismatch");
  }
}

Eigen::VectorXd AffineClassifier::logits(const Eigen::VectorXd& x) const {
  check_dim(x, input_dim());
  return weight_ * x + bias_;
}

LossGradient AffineClassifier::loss_gradient(const Eigen::VectorXd& x, int label) const {
  LossGradient out;
  out.logits = logits(x);
  Eigen::VectorXd p = readout::softmax(out.logits);
  if (label < 0 || label >= p.size()) throw ConfigError("label out of range");
  p[label] -= 1.0;
  out.gradient = weight_.transpose() * p;
  return out;
}

LogitJacobian AffineClassifier::logit_jacobian(const Eigen::VectorXd& x) const {
  return {logits(x), weight_};
}

MlpClassifier::MlpClassifier(readout::MlpParams params, std::pair<double, double> bounds)
    : params_(std::move(params)), bounds_(bounds) {
  params_.validate();
}

Eigen::VectorXd MlpClassifier::logits(const Eigen::VectorXd& x) const {
  return readout::forward(params_, x);
}

LossGradient MlpClassifier::loss_gradient(const Eigen::VectorXd& x, int label) const {
  return {readout::forward(params_, x), readout::input_gradient(params_, x, label)};
}

LogitJacobian MlpClassifier::logit_jacobian(const Eigen::VectorXd& x) const {
  readout::LogitJacobian j = readout::logit_jacobian(params_, x);
  return {std::move(j.logits), std::move(j.jacobian)};
}

PipelineClassifier::PipelineClassifier(const encoding::EncodingPipeline& pipeline,
                                       readout::MlpParams params, FeatureKind kind)
    : pipeline_(&pipeline), params_(std::move(params)), kind_(kind) {
  params_.validate();
  int features = 0;
  switch (kind_) {
    case FeatureKind::kReservoir:
      features = pipeline.embedding_dim();
      break;
    case FeatureKind::kClassical:
      features = pipeline.retained_dim();
      linear_jacobian_ = pipeline.classical_jacobian();
      break;
    case FeatureKind::kPixels:
      features = pipeline.config().downsample_size * pipeline.config().downsample_size;
      linear_jacobian_ = pipeline.resampler().matrix();
      break;
  }
  if (params_.input_dim() != features) {
    throw ConfigError("MLP input size " + std::to_string(params_.input_dim()) +
                      " does not match the feature size " + std::to_string(features));
  }
}

Eigen::VectorXd PipelineClassifier::features(const Eigen::VectorXd& x) const {
  switch (kind_) {
    case FeatureKind::kReservoir:
      return pipeline_->embed(x);
    case FeatureKind::kClassical:
      return pipeline_->classical_features(x);
    case FeatureKind::kPixels:
      return pipeline_->downsampled(x);
  }
  throw ConfigError("unknown feature kind");
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> PipelineClassifier::features_with_jacobian(
    const Eigen::VectorXd& x) const {
  if (kind_ == FeatureKind::kReservoir) {
    encoding::EmbeddingWithJacobian e = pipeline_->embed_with_jacobian(x);
    return {std::move(e.embedding), std::move(e.jacobian)};
  }
  return {features(x), linear_jacobian_};
}

Eigen::VectorXd PipelineClassifier::logits(const Eigen::VectorXd& x) const {
  return readout::forward(params_, features(x));
}

LossGradient PipelineClassifier::loss_gradient(const Eigen::VectorXd& x, int label) const {
  const auto [phi, jac] = features_with_jacobian(x);
  const Eigen::VectorXd g = readout::input_gradient(params_, phi, label);
  return {readout::forward(params_, phi), jac.transpose() * g};
}

LogitJacobian PipelineClassifier::logit_jacobian(const Eigen::VectorXd& x) const {
  const auto [phi, jac] = features_with_jacobian(x);
  readout::LogitJacobian j = readout::logit_jacobian(params_, phi);
  return {std::move(j.logits), j.jacobian * jac};
}

}  // namespace qrc::attacks
