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

#include "qrc/encoding/patches.h"

#include <string>

#include "qrc/error.h"

namespace qrc::encoding {

void require_patch_grid(int source_size, int patch_width) {
  if (patch_width <= 0 || source_size <= 0 || source_size % patch_width != 0) {
    throw ConfigError("patch width " + std::to_string(patch_width) + " does not divide image size " +
                      std::to_string(source_size));
  }
}

std::vector<int> patch_pixel_indices(int source_size, int patch_width) {
  require_patch_grid(source_size, patch_width);
  const int grid = source_size / patch_width;
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(source_size) * source_size);
  for (int br = 0; br < grid; ++br) {
    for (int bc = 0; bc < grid; ++bc) {
      for (int r = 0; r < patch_width; ++r) {
        for (int c = 0; c < patch_width; ++c) {
          idx.push_back((br * patch_width + r) * source_size + bc * patch_width + c);
        }
      }
    }
  }
  return idx;
}

PatchSet extract_patches(const Eigen::VectorXd& pixels, int source_size, int patch_width) {
  require_patch_grid(source_size, patch_width);
  if (pixels.size() != static_cast<Eigen::Index>(source_size) * source_size) {
    throw ConfigError("extract_patches: image has the wrong number of pixels");
  }
  const std::vector<int> idx = patch_pixel_indices(source_size, patch_width);
  const int len = patch_width * patch_width;
  const int count = static_cast<int>(idx.size()) / len;
  PatchSet set{source_size, patch_width, {}};
  set.patches.reserve(count);
  for (int v = 0; v < count; ++v) {
    Eigen::VectorXd p(len);
    for (int e = 0; e < len; ++e) p[e] = pixels[idx[v * len + e]];
    set.patches.push_back(std::move(p));
  }
  return set;
}

Eigen::VectorXd reconstruct_image(const PatchSet& set) {
  const std::vector<int> idx = patch_pixel_indices(set.source_size, set.patch_width);
  const int len = set.patch_width * set.patch_width;
  if (static_cast<std::size_t>(set.count()) * len != idx.size()) {
    throw ConfigError("reconstruct_image: patch count does not match the grid");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (int v = 0; v < set.count(); ++v) {
    if (set.patches[v].size() != len) throw ConfigError("reconstruct_image: bad patch length");
    for (int e = 0; e < len; ++e) out[idx[v * len + e]] = set.patches[v][e];
  }
  return out;
}

}  // namespace qrc::encoding
