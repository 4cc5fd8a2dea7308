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

#include "qrc/encoding/detuning_map.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrc/error.h"

namespace qrc::encoding {

DetuningMap::DetuningMap(Eigen::VectorXd feature_min, Eigen::VectorXd feature_max,
                         double detuning_min, double detuning_max)
    : feature_min_(std::move(feature_min)),
      feature_max_(std::move(feature_max)),
      detuning_min_(detuning_min),
      detuning_max_(detuning_max) {
  if (feature_min_.size() != feature_max_.size()) {
    throw ConfigError("detuning map: min/max length mismatch");
  }
  if (!(detuning_max_ >= detuning_min_)) throw ConfigError("detuning map: empty target range");
  for (Eigen::Index i = 0; i < feature_min_.size(); ++i) {
    if (!(feature_max_[i] >= feature_min_[i])) {
      throw ConfigError("detuning map: feature_max < feature_min on dimension " +
                        std::to_string(i));
    }
  }
}

DetuningMap DetuningMap::fit(const Eigen::MatrixXd& features, double detuning_min,
                             double detuning_max) {
  if (features.rows() == 0) throw ConfigError("detuning map: no training features");
  return DetuningMap(features.colwise().minCoeff().transpose(),
                     features.colwise().maxCoeff().transpose(), detuning_min, detuning_max);
}

void DetuningMap::check(const Eigen::VectorXd& features) const {
  if (features.size() != feature_min_.size()) {
    throw ConfigError("detuning map: feature length " + std::to_string(features.size()) +
                      ", expected " + std::to_string(feature_min_.size()));
  }
}

Eigen::VectorXd DetuningMap::map(const Eigen::VectorXd& features) const {
  check(features);
  Eigen::VectorXd out(features.size());
  for (Eigen::Index i = 0; i < features.size(); ++i) {
    const double lo = feature_min_[i], hi = feature_max_[i];
    if (hi == lo) {
      out[i] = 0.5 * (detuning_min_ + detuning_max_);
      continue;
    }
    const double x = std::clamp(features[i], lo, hi);
    // lerp is exact at both endpoints.
    out[i] = std::lerp(detuning_min_, detuning_max_, (x - lo) / (hi - lo));
  }
  return out;
}

Eigen::VectorXd DetuningMap::jacobian_diagonal(const Eigen::VectorXd& features) const {
  check(features);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(features.size());
  for (Eigen::Index i = 0; i < features.size(); ++i) {
    const double lo = feature_min_[i], hi = feature_max_[i];
    if (hi > lo && features[i] >= lo && features[i] <= hi) {
      out[i] = (detuning_max_ - detuning_min_) / (hi - lo);
    }
  }
  return out;
}

}  // namespace qrc::encoding
