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

#include "qrc/dynamics/hamiltonian.h"
#include "qrc/dynamics/quantum_state.h"
#include "qrc/dynamics/reservoir_config.h"

namespace qrc::dynamics {

enum class PropagationMethod {
  kKrylov,       // Lanczos projection with adaptive substeps
  kChebyshev,    // Chebyshev-Bessel expansion of the full interval
  kRungeKutta4,  // fixed-substep classical RK4
};

struct PropagatorOptions {
  PropagationMethod method = PropagationMethod::kChebyshev;
  /// Error budget (2-norm of the state error) for one call to propagate().
  double tolerance = 1e-10;
  /// Lanczos basis size per substep.
  int krylov_dim = 30;
  /// Krylov substeps allowed per call before falling back to RK4.
  int max_substeps = 20000;
  /// Largest tolerated |norm - 1| after propagation.
  double norm_tolerance = 1e-9;
};

/// Work counters, accumulated over calls.
struct PropagationStats {
  long long matvecs = 0;
  long long substeps = 0;
  long long fallbacks = 0;
};

/// exp(-i H t) |state>. H is time independent, so this is exact up to the
/// integrator tolerance. Throws NumericalError when neither the Krylov
/// propagator nor the RK4 fallback meets the norm tolerance.
QuantumState propagate(const Hamiltonian& h, const QuantumState& state, double time,
                       const PropagatorOptions& options = {}, PropagationStats* stats = nullptr);

/// States at t_m = m * T / M for m = 1..M, propagated segment by segment from
/// `initial` at t = 0. `initial` must be normalized.
std::vector<QuantumState> evolve(const Hamiltonian& h, const QuantumState& initial,
                                 const ReservoirConfig& config,
                                 const PropagatorOptions& options = {},
                                 PropagationStats* stats = nullptr);

}  // namespace qrc::dynamics
