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

#include "qrc/dynamics/quantum_state.h"

#include <cmath>
#include <string>

#include "qrc/error.h"

namespace qrc::dynamics {

QuantumState::QuantumState(int n_atoms, std::vector<Complex> amplitudes)
    : n_atoms_(n_atoms), amplitudes_(std::move(amplitudes)) {
  if (n_atoms < 0 || n_atoms > 30 || amplitudes_.size() != (std::size_t{1} << n_atoms)) {
    throw ConfigError("state vector length " + std::to_string(amplitudes_.size()) +
                      " does not match 2^" + std::to_string(n_atoms));
  }
}

QuantumState QuantumState::all_plus(int n_atoms) {
  const std::size_t dim = std::size_t{1} << n_atoms;
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  return QuantumState(n_atoms, std::vector<Complex>(dim, Complex(a, 0.0)));
}

QuantumState QuantumState::all_ground(int n_atoms) { return basis(n_atoms, 0); }

QuantumState QuantumState::basis(int n_atoms, std::uint64_t index) {
  const std::size_t dim = std::size_t{1} << n_atoms;
  if (index >= dim) throw ConfigError("basis index out of range");
  std::vector<Complex> amps(dim, Complex(0.0, 0.0));
  amps[index] = 1.0;
  return QuantumState(n_atoms, std::move(amps));
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const Complex& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

void require_normalized(const QuantumState& state, double tolerance) {
  const double n = state.norm();
  if (!(std::abs(n - 1.0) <= tolerance)) {
    throw ConfigError("state is not normalized (norm = " + std::to_string(n) + ")");
  }
}

}  // namespace qrc::dynamics
