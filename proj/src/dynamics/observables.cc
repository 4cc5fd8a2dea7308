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

#include "qrc/dynamics/observables.h"

#include "qrc/error.h"

namespace qrc::dynamics {

std::vector<double> measure_observables(const QuantumState& state, int n_atoms) {
  if (state.n_atoms() != n_atoms) throw ConfigError("measure_observables: atom count mismatch");
  require_normalized(state);
  const int n = n_atoms;
  const std::size_t pairs = static_cast<std::size_t>(n * (n - 1) / 2);
  std::vector<double> out(static_cast<std::size_t>(n) + pairs, 0.0);
  std::vector<double> sign(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < state.dimension(); ++b) {
    const double p = std::norm(state[b]);
    if (p == 0.0) continue;
    for (int i = 0; i < n; ++i) sign[i] = ((b >> i) & 1U) ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out[i] += p * sign[i];
    std::size_t k = static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++k) out[k] += p * sign[i] * sign[j];
    }
  }
  return out;
}

}  // namespace qrc::dynamics
