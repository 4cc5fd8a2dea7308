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

/// Per-dimension min-max map of features onto [detuning_min, detuning_max].
/// Features outside the fitted range are clamped to it. A dimension whose
/// fitted range is empty maps to the midpoint of the detuning range.
class DetuningMap {
 public:
  DetuningMap() = default;
  DetuningMap(Eigen::VectorXd feature_min, Eigen::VectorXd feature_max, double detuning_min,
              double detuning_max);

  /// Column-wise min and max over the rows of `features`.
  static DetuningMap fit(const Eigen::MatrixXd& features, double detuning_min,
                         double detuning_max);

  int dim() const { return static_cast<int>(feature_min_.size()); }
  const Eigen::VectorXd& feature_min() const { return feature_min_; }
  const Eigen::VectorXd& feature_max() const { return feature_max_; }
  double detuning_min() const { return detuning_min_; }
  double detuning_max() const { return detuning_max_; }

  Eigen::VectorXd map(const Eigen::VectorXd& features) const;

  /// d map_i / d feature_i: the affine slope inside the fitted range
  /// (boundaries included), 0 outside it and on empty-range dimensions.
  Eigen::VectorXd jacobian_diagonal(const Eigen::VectorXd& features) const;

 private:
  void check(const Eigen::VectorXd& features) const;

  Eigen::VectorXd feature_min_;
  Eigen::VectorXd feature_max_;
  double detuning_min_ = 0.0;
  double detuning_max_ = 0.0;
};

}  // namespace qrc::encoding
