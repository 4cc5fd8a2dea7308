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

#include "qrc/dynamics/reservoir_config.h"

#include <cmath>
#include <string>

#include "qrc/error.h"

namespace qrc::dynamics {

ReservoirConfig ReservoirConfig::reference(int n_atoms) {
  ReservoirConfig config;
  config.n_atoms = n_atoms;
  config.local_modulation.assign(static_cast<std::size_t>(std::max(n_atoms, 0)), 0.15);
  return config;
}

void ReservoirConfig::validate() const {
  if (n_atoms < 1) throw ConfigError("n_atoms must be >= 1, got " + std::to_string(n_atoms));
  // 2^N doubles per state; beyond ~24 atoms nothing fits in memory anyway.
  if (n_atoms > 24) throw ConfigError("n_atoms > 24 is not supported by the dense state vector");
  if (!(lattice_spacing > 0.0)) throw ConfigError("lattice_spacing must be > 0");
  if (!(detuning_max >= detuning_min)) throw ConfigError("detuning_max must be >= detuning_min");
  if (num_snapshots < 1) throw ConfigError("num_snapshots must be >= 1");
  if (!(total_time > 0.0)) throw ConfigError("total_time must be > 0");
  if (!std::isfinite(c6_coefficient) || !std::isfinite(rabi_frequency)) {
    throw ConfigError("c6_coefficient and rabi_frequency must be finite");
  }
  if (static_cast<int>(local_modulation.size()) != n_atoms) {
    throw ConfigError("local_modulation has " + std::to_string(local_modulation.size()) +
                      " entries, expected n_atoms = " + std::to_string(n_atoms));
  }
  for (double a : local_modulation) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("local_modulation entries must lie in [0, 1]");
  }
}

double ReservoirConfig::interaction(int i, int j) const {
  const double r = std::abs(i - j) * lattice_spacing;
  return c6_coefficient / std::pow(r, 6);
}

}  // namespace qrc::dynamics
