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
#include <cstdint>
#include <vector>

namespace qrc::readout {

/// Fully connected layer: y = W x + b with W of shape out x in.
struct Layer {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
};

/// Perceptron with ReLU + dropout after every hidden layer and linear logits.
struct MlpParams {
  std::vector<Layer> layers;
  double dropout_rate = 1e-3;

  /// Layer sizes {D, h1, ..., C}; all parameters zero.
  static MlpParams zeros(const std::vector<int>& sizes, double dropout_rate = 1e-3);

  /// Uniform He initialisation: W ~ U(-sqrt(6/fan_in), sqrt(6/fan_in)), b = 0.
  static MlpParams he_uniform(const std::vector<int>& sizes, std::uint64_t seed,
                              double dropout_rate = 1e-3);

  int input_dim() const { return static_cast<int>(layers.front().weight.cols()); }
  int num_classes() const { return static_cast<int>(layers.back().weight.rows()); }
  std::vector<int> sizes() const;
  std::size_t parameter_count() const;
  bool all_finite() const;

  /// Flattened parameters: per layer, W row-major then b.
  Eigen::VectorXd flatten() const;
  void unflatten(const Eigen::VectorXd& values);

  /// Throws ConfigError when shapes are inconsistent.
  void validate() const;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  int batch_size = 64;
  int max_epochs = 500;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Dropout keep-masks of one batch, one matrix per hidden layer
/// (hidden_units x batch), entries 0 or 1/(1-p).
using DropoutMasks = std::vector<Eigen::MatrixXd>;

/// Eval-mode logits (dropout disabled).
Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& input);

/// Eval-mode logits of many inputs, one per row; returns one row per input.
Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs);

/// Train-mode logits with explicit masks (columns = batch samples).
Eigen::MatrixXd forward_train(const MlpParams& params, const Eigen::MatrixXd& inputs_by_column,
                              const DropoutMasks& masks);

/// Numerically stable softmax.
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

/// -log softmax(logits)[label].
double cross_entropy(const Eigen::VectorXd& logits, int label);

struct LossAndGrads {
  double loss = 0.0;
  MlpParams grads;
};

/// Mean cross-entropy over the batch (rows of `inputs`) and its parameter
/// gradients. Eval mode unless masks are supplied. Throws ConfigError on an
/// empty batch or a label out of range.
LossAndGrads loss_and_grads(const MlpParams& params, const Eigen::MatrixXd& inputs,
                            const std::vector<int>& labels, const DropoutMasks* masks = nullptr);

/// d cross_entropy / d input, eval mode.
Eigen::VectorXd input_gradient(const MlpParams& params, const Eigen::VectorXd& input, int label);

/// Eval-mode logits and their C x D Jacobian with respect to the input.
struct LogitJacobian {
  Eigen::VectorXd logits;
  Eigen::MatrixXd jacobian;
};
LogitJacobian logit_jacobian(const MlpParams& params, const Eigen::VectorXd& input);

struct EpochMetrics {
  double loss = 0.0;      // mean train-mode loss over the epoch
  double accuracy = 0.0;  // train-mode accuracy over the epoch
};

struct TrainResult {
  MlpParams params;
  std::vector<EpochMetrics> history;
};

/// Adam on mini-batches for exactly max_epochs epochs. Samples are first put
/// into a canonical order (by label, then features), so the result does not
/// depend on the order of the rows. The batch order of epoch e and every
/// dropout mask are pure functions of (seed, e). Throws NumericalError on a
/// non-finite loss.
TrainResult train(const MlpParams& init, const Eigen::MatrixXd& inputs,
                  const std::vector<int>& labels, const TrainConfig& config);

/// Fraction of rows whose eval-mode argmax equals the label.
double accuracy(const MlpParams& params, const Eigen::MatrixXd& inputs,
                const std::vector<int>& labels);

/// Index of the largest entry (lowest index on ties).
int argmax(const Eigen::VectorXd& v);

}  // namespace qrc::readout
