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

#include "qrc/dynamics/reservoir.h"

#include <sstream>
#include <vector>

#include "qrc/dynamics/hamiltonian.h"
#include "qrc/dynamics/observables.h"
#include "qrc/error.h"

namespace qrc::dynamics {
namespace {

Eigen::VectorXd embed_with(const ReservoirConfig& config, std::span<const double> detunings,
                           const BuildOptions& build, const PropagatorOptions& options,
                           PropagationStats* stats) {
  const Hamiltonian h = build_hamiltonian(config, detunings, build);
  const std::vector<QuantumState> snapshots = evolve(h, initial_state(config), config, options, stats);
  const int r = config.observables_per_snapshot();
  Eigen::VectorXd out(config.embedding_dim());
  for (int m = 0; m < config.num_snapshots; ++m) {
    const std::vector<double> obs = measure_observables(snapshots[m], config.n_atoms);
    for (int k = 0; k < r; ++k) out[m * r + k] = obs[k];
  }
  return out;
}

}  // namespace

QuantumState initial_state(const ReservoirConfig& config) {
  switch (config.initial_state) {
    case InitialState::kAllPlus:
      return QuantumState::all_plus(config.n_atoms);
    case InitialState::kAllGround:
      return QuantumState::all_ground(config.n_atoms);
  }
  throw ConfigError("unknown initial state");
}

Eigen::VectorXd reservoir_embed(const ReservoirConfig& config, std::span<const double> detunings,
                                const PropagatorOptions& options, PropagationStats* stats) {
  return embed_with(config, detunings, BuildOptions{}, options, stats);
}

Eigen::MatrixXd reservoir_jacobian(const ReservoirConfig& config,
                                   std::span<const double> detunings,
                                   const JacobianOptions& options, PropagationStats* stats) {
  config.validate();
  const int n = config.n_atoms;
  if (static_cast<int>(detunings.size()) != n) {
    throw ConfigError("reservoir_jacobian: detuning vector length mismatch");
  }
  const int active = options.active.value_or(n);
  if (active < 0 || active > n) throw ConfigError("reservoir_jacobian: invalid active atom count");
  if (!options.mask.empty() && static_cast<int>(options.mask.size()) != active) {
    throw ConfigError("reservoir_jacobian: mask length does not match the active atom count");
  }
  auto probed = [&](int i) { return options.mask.empty() || options.mask[i]; };

  const double range = config.detuning_range();
  double step = options.step > 0.0 ? options.step : 1e-4 * (range > 0.0 ? range : 1.0);
  const double lo = config.detuning_min - (range > 0.0 ? range : 1.0);
  const double hi = config.detuning_max + (range > 0.0 ? range : 1.0);
  auto safe = [&](double s) {
    for (int i = 0; i < active; ++i) {
      if (!probed(i)) continue;
      if (detunings[i] - s < lo || detunings[i] + s > hi) return false;
    }
    return true;
  };
  if (!safe(step)) {
    step *= 0.5;
    if (!safe(step)) {
      std::ostringstream msg;
      msg << "finite-difference probe leaves the detuning window [" << lo << ", " << hi
          << "] even after shrinking the step to " << step;
      throw NumericalError(msg.str());
    }
  }

  const BuildOptions unclamped{.clamp = false};
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(config.embedding_dim(), active);
  std::vector<double> probe(detunings.begin(), detunings.end());
  for (int i = 0; i < active; ++i) {
    if (!probed(i)) continue;
    probe[i] = detunings[i] + step;
    const Eigen::VectorXd plus = embed_with(config, probe, unclamped, options.propagator, stats);
    probe[i] = detunings[i] - step;
    const Eigen::VectorXd minus = embed_with(config, probe, unclamped, options.propagator, stats);
    probe[i] = detunings[i];
    jac.col(i) = (plus - minus) / (2.0 * step);
  }
  return jac;
}

}  // namespace qrc::dynamics
