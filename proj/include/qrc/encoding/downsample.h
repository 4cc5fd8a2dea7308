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

#include "qrc/encoding/image.h"

namespace qrc::encoding {

/// Area interpolation from L x L to S x S. Output pixel (r, c) averages the
/// source area it covers, weighting partially covered source pixels by their
/// overlap, so it is the mean of an (L/S) x (L/S) block when S divides L.
/// The map is linear: out = W X W^T for the 1-D weight matrix W (S x L).
class AreaResampler {
 public:
  AreaResampler(int source_size, int target_size);

  int source_size() const { return source_; }
  int target_size() const { return target_; }

  /// S x L; every row is non-negative and sums to 1.
  const Eigen::MatrixXd& weights() const { return weights_; }

  /// Row-major S^2 pixels from row-major L^2 pixels.
  Eigen::VectorXd apply(const Eigen::VectorXd& pixels) const;

  /// The S^2 x L^2 matrix of apply() (the Kronecker square of weights()).
  Eigen::MatrixXd matrix() const;

 private:
  int source_;
  int target_;
  Eigen::MatrixXd weights_;
};

/// Throws ConfigError when target <= 0 or target > image.side. Rounding
/// excursions outside [0, 1] are clipped.
Image downsample(const Image& image, int target);

}  // namespace qrc::encoding
