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

/// Square grayscale image, pixels row-major with values in [0, 1].
struct Image {
  int side = 0;
  Eigen::VectorXd pixels;

  /// Validates shape and range; throws ConfigError.
  static Image from_pixels(int side, Eigen::VectorXd pixels);

  double at(int row, int col) const { return pixels[row * side + col]; }
};

/// Throws ConfigError unless `pixels` has side^2 finite entries in [0, 1].
void require_valid_pixels(const Eigen::VectorXd& pixels, int side);

}  // namespace qrc::encoding
