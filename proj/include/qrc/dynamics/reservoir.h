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
#include <optional>
#include <span>
#include <vector>

#include "qrc/dynamics/propagator.h"
#include "qrc/dynamics/reservoir_config.h"

namespace qrc::dynamics {

/// Initial state named by the config.
QuantumState initial_state(const ReservoirConfig& config);

/// Feature vector of one detuning vector: for each snapshot t_1..t_M, the N
/// single-site <sigma^z> values followed by the N(N-1)/2 pair correlators.
/// Length config.embedding_dim(); a pure, bitwise-deterministic function.
Eigen::VectorXd reservoir_embed(const ReservoirConfig& config, std::span<const double> detunings,
                                const PropagatorOptions& options = {},
                                PropagationStats* stats = nullptr);

struct JacobianOptions {
  /// Central-difference step; <= 0 selects 1e-4 of the detuning range.
  double step = 0.0;
  /// Differentiate only with respect to the first `active` atoms (atoms past
  /// the encoded features hold a fixed detuning).
  std::optional<int> active;
  /// When non-empty (length n_active), columns with a false entry are left
  /// zero and never probed.
  std::vector<bool> mask;
  PropagatorOptions propagator;
};

/// D x n_active matrix d(embedding)/d(detuning) by central differences,
/// 2 evolutions per column, with clamping disabled at the probe points.
/// A probe outside [min - range, max + range] halves the step once; if it is
/// still outside, NumericalError is thrown.
Eigen::MatrixXd reservoir_jacobian(const ReservoirConfig& config,
                                   std::span<const double> detunings,
                                   const JacobianOptions& options = {},
                                   PropagationStats* stats = nullptr);

}  // namespace qrc::dynamics
