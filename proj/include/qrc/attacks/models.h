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
#include <memory>
#include <utility>

#include "qrc/encoding/pipeline.h"
#include "qrc/readout/mlp.h"

namespace qrc::attacks {

struct LossGradient {
  Eigen::VectorXd logits;
  Eigen::VectorXd gradient;  // d cross_entropy / d input
};

struct LogitJacobian {
  Eigen::VectorXd logits;
  Eigen::MatrixXd jacobian;  // C x input_dim
};

/// Differentiable classifier seen by the attacks. Implementations are pure and
/// safe to call concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual int input_dim() const = 0;
  virtual int num_classes() const = 0;
  virtual Eigen::VectorXd logits(const Eigen::VectorXd& x) const = 0;
  virtual LossGradient loss_gradient(const Eigen::VectorXd& x, int label) const = 0;
  virtual LogitJacobian logit_jacobian(const Eigen::VectorXd& x) const = 0;

  /// Box every attack output is clipped to.
  virtual std::pair<double, double> input_bounds() const { return {0.0, 1.0}; }

  int predict(const Eigen::VectorXd& x) const;
};

/// logits = W x + b.
class AffineClassifier : public Classifier {
 public:
  AffineClassifier(Eigen::MatrixXd weight, Eigen::VectorXd bias,
                   std::pair<double, double> bounds = {0.0, 1.0});

  int input_dim() const override { return static_cast<int>(weight_.cols()); }
  int num_classes() const override { return static_cast<int>(weight_.rows()); }
  Eigen::VectorXd logits(const Eigen::VectorXd& x) const override;
  LossGradient loss_gradient(const Eigen::VectorXd& x, int label) const override;
  LogitJacobian logit_jacobian(const Eigen::VectorXd& x) const override;
  std::pair<double, double> input_bounds() const override { return bounds_; }

 private:
  Eigen::MatrixXd weight_;
  Eigen::VectorXd bias_;
  std::pair<double, double> bounds_;
};

/// MLP applied directly to its input vector (for example a reservoir
/// embedding, with bounds [-1, 1]).
class MlpClassifier : public Classifier {
 public:
  explicit MlpClassifier(readout::MlpParams params, std::pair<double, double> bounds = {0.0, 1.0});

  int input_dim() const override { return params_.input_dim(); }
  int num_classes() const override { return params_.num_classes(); }
  Eigen::VectorXd logits(const Eigen::VectorXd& x) const override;
  LossGradient loss_gradient(const Eigen::VectorXd& x, int label) const override;
  LogitJacobian logit_jacobian(const Eigen::VectorXd& x) const override;
  std::pair<double, double> input_bounds() const override { return bounds_; }

 private:
  readout::MlpParams params_;
  std::pair<double, double> bounds_;
};

/// Feature map placed between the pixels and the MLP.
enum class FeatureKind {
  kReservoir,  // reservoir embedding; gradients chained through pipeline_jacobian
  kClassical,  // patch-averaged PCA features (linear)
  kPixels,     // downsampled pixels (linear)
};

/// MLP on top of a fitted encoding pipeline, attacked in the original pixel
/// space. The pipeline must outlive the classifier.
class PipelineClassifier : public Classifier {
 public:
  PipelineClassifier(const encoding::EncodingPipeline& pipeline, readout::MlpParams params,
                     FeatureKind kind);

  int input_dim() const override { return pipeline_->input_dim(); }
  int num_classes() const override { return params_.num_classes(); }
  Eigen::VectorXd logits(const Eigen::VectorXd& x) const override;
  LossGradient loss_gradient(const Eigen::VectorXd& x, int label) const override;
  LogitJacobian logit_jacobian(const Eigen::VectorXd& x) const override;

  FeatureKind kind() const { return kind_; }
  Eigen::VectorXd features(const Eigen::VectorXd& x) const;

 private:
  // Features and d features / d pixels.
  std::pair<Eigen::VectorXd, Eigen::MatrixXd> features_with_jacobian(const Eigen::VectorXd& x) const;

  const encoding::EncodingPipeline* pipeline_;
  readout::MlpParams params_;
  FeatureKind kind_;
  Eigen::MatrixXd linear_jacobian_;  // classical / pixel maps only
};

}  // namespace qrc::attacks
