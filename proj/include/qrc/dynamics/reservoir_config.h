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

#include <numbers>
#include <vector>

namespace qrc::dynamics {

/// Units used throughout the dynamics module:
///   * every frequency (Rabi frequency, detunings, interaction energies and the
///     C6 coefficient) is an angular frequency in rad/us, i.e. "2 pi x f MHz"
///     is stored as 2 * pi * f;
///   * times are in microseconds;
///   * lengths are in micrometers.
/// With hbar = 1 the phase accumulated over time t is rate * t directly.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Starting state of every reservoir evolution.
enum class InitialState {
  kAllPlus,    // |+>^N, the reference configuration
  kAllGround,  // |g...g>
};

/// Physical parameters of a 1-D Rydberg chain with open boundaries. Atom i
/// sits at position i * lattice_spacing.
struct ReservoirConfig {
  int n_atoms = 8;
  double lattice_spacing = 10.0;
  double c6_coefficient = kTwoPi * 2000.0;
  double rabi_frequency = kTwoPi * 5.0;
  double detuning_min = 0.0;
  double detuning_max = kTwoPi * 10.0;
  // Site modulation alpha_i; must have n_atoms entries.
  std::vector<double> local_modulation = std::vector<double>(8, 0.15);
  double total_time = 3.0;
  int num_snapshots = 6;
  InitialState initial_state = InitialState::kAllPlus;

  /// Reference parameters with the chain resized to n_atoms (uniform 0.15
  /// modulation).
  static ReservoirConfig reference(int n_atoms = 8);

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  /// V_ij = C6 / |r_i - r_j|^6.
  double interaction(int i, int j) const;

  /// N + N(N-1)/2.
  int observables_per_snapshot() const { return n_atoms + n_atoms * (n_atoms - 1) / 2; }

  /// M (N + N(N-1)/2).
  int embedding_dim() const { return num_snapshots * observables_per_snapshot(); }

  double detuning_range() const { return detuning_max - detuning_min; }

  /// Snapshot spacing; snapshots sit at m * dt for m = 1..M.
  double snapshot_interval() const { return total_time / num_snapshots; }
};

}  // namespace qrc::dynamics
