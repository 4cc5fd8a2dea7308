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

#include "qrc/encoding/downsample.h"

#include <algorithm>
#include <string>

#include "qrc/error.h"

namespace qrc::encoding {

AreaResampler::AreaResampler(int source_size, int target_size)
    : source_(source_size), target_(target_size) {
  if (target_size <= 0 || source_size <= 0 || target_size > source_size) {
    throw ConfigError("area resampling needs 0 < target <= source, got " +
                      std::to_string(source_size) + " -> " + std::to_string(target_size));
  }
  // On a grid refined by L*S, output pixel j spans [j L, (j+1) L) and source
  // pixel k spans [k S, (k+1) S); overlaps are integers, weights overlap / L.
  weights_ = Eigen::MatrixXd::Zero(target_, source_);
  for (int j = 0; j < target_; ++j) {
    const long lo = static_cast<long>(j) * source_;
    const long hi = lo + source_;
    for (int k = 0; k < source_; ++k) {
      const long a = std::max(lo, static_cast<long>(k) * target_);
      const long b = std::min(hi, static_cast<long>(k + 1) * target_);
      if (b > a) weights_(j, k) = static_cast<double>(b - a) / source_;
    }
  }
}

Eigen::VectorXd AreaResampler::apply(const Eigen::VectorXd& pixels) const {
  if (pixels.size() != static_cast<Eigen::Index>(source_) * source_) {
    throw ConfigError("resampler expects " + std::to_string(source_) + "^2 pixels");
  }
  // Row-major storage: X(r, c) = pixels[r L + c].
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      x(pixels.data(), source_, source_);
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> y =
      weights_ * x * weights_.transpose();
  return Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
}

Eigen::MatrixXd AreaResampler::matrix() const {
  const int s = target_, l = source_;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s * s, l * l);
  for (int r = 0; r < s; ++r) {
    for (int c = 0; c < s; ++c) {
      for (int k = 0; k < l; ++k) {
        const double wr = weights_(r, k);
        if (wr == 0.0) continue;
        for (int q = 0; q < l; ++q) m(r * s + c, k * l + q) = wr * weights_(c, q);
      }
    }
  }
  return m;
}

Image downsample(const Image& image, int target) {
  if (target <= 0 || target > image.side) {
    throw ConfigError("downsample target " + std::to_string(target) +
                      " must lie in [1, " + std::to_string(image.side) + "]");
  }
  const AreaResampler resampler(image.side, target);
  Eigen::VectorXd out = resampler.apply(image.pixels).cwiseMax(0.0).cwiseMin(1.0);
  return Image{target, std::move(out)};
}

}  // namespace qrc::encoding
