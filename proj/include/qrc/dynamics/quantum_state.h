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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qrc::dynamics {

using Complex = std::complex<double>;

/// Pure state of N two-level atoms over the 2^N computational basis. Bit i of
/// a basis index is atom i (little-endian); bit value 0 is |g>, 1 is |r>.
class QuantumState {
 public:
  QuantumState() = default;
  QuantumState(int n_atoms, std::vector<Complex> amplitudes);

  static QuantumState all_plus(int n_atoms);
  static QuantumState all_ground(int n_atoms);
  static QuantumState basis(int n_atoms, std::uint64_t index);

  int n_atoms() const { return n_atoms_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  const Complex& operator[](std::size_t b) const { return amplitudes_[b]; }
  Complex& operator[](std::size_t b) { return amplitudes_[b]; }

  double norm() const;

  bool operator==(const QuantumState&) const = default;

 private:
  int n_atoms_ = 0;
  std::vector<Complex> amplitudes_;
};

/// Throws ConfigError unless |norm - 1| <= tolerance.
void require_normalized(const QuantumState& state, double tolerance = 1e-9);

}  // namespace qrc::dynamics
