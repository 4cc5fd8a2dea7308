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

#include "qrc/encoding/image.h"

#include <cmath>
#include <string>

#include "qrc/error.h"

namespace qrc::encoding {

void require_valid_pixels(const Eigen::VectorXd& pixels, int side) {
  if (side <= 0 || pixels.size() != static_cast<Eigen::Index>(side) * side) {
    throw ConfigError("image has " + std::to_string(pixels.size()) + " pixels, expected " +
                      std::to_string(side) + "^2");
  }
  for (Eigen::Index i = 0; i < pixels.size(); ++i) {
    const double v = pixels[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw ConfigError("pixel " + std::to_string(i) + " = " + std::to_string(v) +
                        " is outside [0, 1]");
    }
  }
}

Image Image::from_pixels(int side, Eigen::VectorXd pixels) {
  require_valid_pixels(pixels, side);
  return Image{side, std::move(pixels)};
}

}  // namespace qrc::encoding
