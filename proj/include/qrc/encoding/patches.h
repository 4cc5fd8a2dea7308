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
#include <vector>

namespace qrc::encoding {

/// kappa = (S/P)^2 non-overlapping P x P blocks of an S x S image. Blocks are
/// ordered row-major over the block grid; each block is flattened row-major.
struct PatchSet {
  int source_size = 0;
  int patch_width = 0;
  std::vector<Eigen::VectorXd> patches;

  int count() const { return static_cast<int>(patches.size()); }
};

/// Throws ConfigError unless P > 0 and P divides S.
void require_patch_grid(int source_size, int patch_width);

PatchSet extract_patches(const Eigen::VectorXd& pixels, int source_size, int patch_width);

/// Inverse of extract_patches.
Eigen::VectorXd reconstruct_image(const PatchSet& set);

/// Image pixel index of element e of patch v, as a flat vector indexed by
/// v * P^2 + e.
std::vector<int> patch_pixel_indices(int source_size, int patch_width);

}  // namespace qrc::encoding
