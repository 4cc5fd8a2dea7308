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

#include <span>
#include <utility>
#include <vector>

#include "qrc/dynamics/quantum_state.h"
#include "qrc/dynamics/reservoir_config.h"

namespace qrc::dynamics {

/// H = (Omega/2) sum_i sigma^x_i - sum_i alpha_i Delta_i n_i + sum_{i<j} V_ij n_i n_j,
/// stored matrix-free as its diagonal in the computational basis plus the
/// coefficient of the transverse drive. The sigma^x part is never
/// materialized.
class Hamiltonian {
 public:
  Hamiltonian(int n_atoms, std::vector<double> diagonal, double drive_amplitude);

  int n_atoms() const { return n_atoms_; }
  std::size_t dimension() const { return diagonal_.size(); }
  std::span<const double> diagonal() const { return diagonal_; }
  /// Omega / 2.
  double drive_amplitude() const { return drive_amplitude_; }

  /// out = H in. Cost O(N 2^N). `in` and `out` must not alias.
  void apply(std::span<const Complex> in, std::span<Complex> out) const;
  std::vector<Complex> apply(const QuantumState& state) const;

  /// Enclosure [lo, hi] of the spectrum: exact single-site spectra plus a
  /// Weyl bound for the remaining (interaction) part of the diagonal.
  std::pair<double, double> spectral_bounds() const;

 private:
  void compute_bounds();

  int n_atoms_;
  std::vector<double> diagonal_;
  double drive_amplitude_;
  std::pair<double, double> bounds_;
};

struct BuildOptions {
  /// Clamp detunings into [detuning_min, detuning_max] (with a warning).
  /// Finite-difference probes disable this so perturbed points are exact.
  bool clamp = true;
};

/// Assembles the Hamiltonian for one detuning vector (length n_atoms).
/// Throws ConfigError on a length mismatch or invalid config.
Hamiltonian build_hamiltonian(const ReservoirConfig& config, std::span<const double> detunings,
                              const BuildOptions& options = {});

}  // namespace qrc::dynamics
