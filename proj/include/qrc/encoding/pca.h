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

namespace qrc::encoding {

/// Principal components of a patch corpus.
struct PcaModel {
  Eigen::VectorXd mean;          // length P^2
  Eigen::MatrixXd components;    // P^2 x delta, orthonormal columns
  Eigen::VectorXd eigenvalues;   // length P^2, descending, non-negative
  int retained_dim = 0;
  double variance_threshold = 0.0;  // 0 when delta was given explicitly

  int input_dim() const { return static_cast<int>(mean.size()); }

  /// W^T (patch - mean). Throws ConfigError on a length mismatch.
  Eigen::VectorXd project(const Eigen::VectorXd& patch) const;

  /// mean + W features.
  Eigen::VectorXd reconstruct(const Eigen::VectorXd& features) const;

  /// Fraction of the total variance held by the retained components.
  double retained_variance() const;
};

/// Either a fixed delta (retained_dim > 0) or the smallest delta whose
/// retained variance fraction exceeds variance_threshold.
struct PcaSelection {
  int retained_dim = 0;
  double variance_threshold = 0.95;
};

/// Fits on the rows of `patches` (one patch per row). Covariance uses the 1/n
/// normalization. Each component is signed so its largest-magnitude entry is
/// positive. If the covariance rank is below delta, delta is reduced with a
/// warning. Throws ConfigError when there are fewer than delta + 1 rows or
/// delta > P^2, NumericalError when the covariance vanishes.
PcaModel fit_pca(const Eigen::MatrixXd& patches, const PcaSelection& selection);

}  // namespace qrc::encoding
