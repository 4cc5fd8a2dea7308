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

#include <vector>

#include "qrc/dynamics/quantum_state.h"

namespace qrc::dynamics {

/// <sigma^z_i> for i = 0..N-1, then <sigma^z_i sigma^z_j> for i < j in
/// lexicographic order. sigma^z is +1 on |g> (bit 0) and -1 on |r>.
/// Requires a normalized state (checked to 1e-9).
std::vector<double> measure_observables(const QuantumState& state, int n_atoms);

}  // namespace qrc::dynamics
