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

#include <filesystem>
#include <string>
#include <string_view>

#include "qrc/readout/mlp.h"

namespace qrc::readout {

struct Checkpoint {
  MlpParams params;
  TrainConfig train_config;
};

/// Matrix container (magic QRCMLP1) holding one column:
/// [layer count L, (out, in) per layer, dropout rate, learning rate, batch
///  size, max epochs, beta1, beta2, epsilon, seed high 32 bits, seed low 32
///  bits, parameters (per layer W row-major then b)].
std::string encode_checkpoint(const Checkpoint& checkpoint);
Checkpoint decode_checkpoint(std::string_view bytes);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace qrc::readout
