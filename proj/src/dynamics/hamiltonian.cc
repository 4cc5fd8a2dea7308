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

#include "qrc/dynamics/hamiltonian.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrc/error.h"
#include "qrc/log.h"

namespace qrc::dynamics {

Hamiltonian::Hamiltonian(int n_atoms, std::vector<double> diagonal, double drive_amplitude)
    : n_atoms_(n_atoms), diagonal_(std::move(diagonal)), drive_amplitude_(drive_amplitude) {
  if (n_atoms < 1 || diagonal_.size() != (std::size_t{1} << n_atoms)) {
    throw ConfigError("Hamiltonian diagonal length does not match 2^n_atoms");
  }
  compute_bounds();
}

void Hamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  const std::size_t dim = diagonal_.size();
  if (in.size() != dim || out.size() != dim) {
    throw ConfigError("Hamiltonian::apply dimension mismatch");
  }
  for (std::size_t b = 0; b < dim; ++b) out[b] = diagonal_[b] * in[b];
  if (drive_amplitude_ == 0.0) return;
  const double g = drive_amplitude_;
  // sigma^x_i pairs index b (bit i clear) with b | 2^i.
  for (int i = 0; i < n_atoms_; ++i) {
    const std::size_t stride = std::size_t{1} << i;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      const Complex* lo_in = in.data() + base;
      const Complex* hi_in = lo_in + stride;
      Complex* lo_out = out.data() + base;
      Complex* hi_out = lo_out + stride;
      for (std::size_t k = 0; k < stride; ++k) {
        lo_out[k] += g * hi_in[k];
        hi_out[k] += g * lo_in[k];
      }
    }
  }
}

std::vector<Complex> Hamiltonian::apply(const QuantumState& state) const {
  std::vector<Complex> out(dimension());
  apply(state.amplitudes(), out);
  return out;
}

std::pair<double, double> Hamiltonian::spectral_bounds() const { return bounds_; }

// Split the diagonal as d[0] + sum_i e_i bit_i(b) + R[b] with e_i = d[2^i] - d[0].
// Each g sigma^x_i + e_i n_i has exact eigenvalues e_i/2 -+ sqrt(g^2 + e_i^2/4);
// the single-site terms commute, and Weyl's inequality adds [min R, max R].
void Hamiltonian::compute_bounds() {
  const double g = std::abs(drive_amplitude_);
  const std::size_t dim = diagonal_.size();
  double lo = diagonal_[0], hi = diagonal_[0];
  std::vector<double> e(static_cast<std::size_t>(n_atoms_));
  for (int i = 0; i < n_atoms_; ++i) {
    e[i] = diagonal_[std::size_t{1} << i] - diagonal_[0];
    const double r = std::sqrt(g * g + 0.25 * e[i] * e[i]);
    lo += 0.5 * e[i] - r;
    hi += 0.5 * e[i] + r;
  }
  double rmin = 0.0, rmax = 0.0;
  for (std::size_t b = 0; b < dim; ++b) {
    double r = diagonal_[b] - diagonal_[0];
    for (int i = 0; i < n_atoms_; ++i) {
      if ((b >> i) & 1U) r -= e[i];
    }
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  // Pad by a few ulps of the scale so rounding never leaves the enclosure.
  const double pad = 1e-12 * std::max({std::abs(lo + rmin), std::abs(hi + rmax), 1.0});
  bounds_ = {lo + rmin - pad, hi + rmax + pad};
}

Hamiltonian build_hamiltonian(const ReservoirConfig& config, std::span<const double> detunings,
                              const BuildOptions& options) {
  config.validate();
  const int n = config.n_atoms;
  if (static_cast<int>(detunings.size()) != n) {
    throw ConfigError("detuning vector has length " + std::to_string(detunings.size()) +
                      ", expected " + std::to_string(n));
  }

  // Effective single-site shift alpha_i * Delta_i.
  std::vector<double> shift(static_cast<std::size_t>(n));
  int clamped = 0;
  for (int i = 0; i < n; ++i) {
    double d = detunings[i];
    if (!std::isfinite(d)) throw ConfigError("detuning is not finite");
    if (options.clamp && (d < config.detuning_min || d > config.detuning_max)) {
      d = std::clamp(d, config.detuning_min, config.detuning_max);
      ++clamped;
    }
    shift[i] = config.local_modulation[i] * d;
  }
  if (clamped > 0) {
    std::ostringstream msg;
    msg << "clamped " << clamped << " detuning(s) into [" << config.detuning_min << ", "
        << config.detuning_max << "]";
    log_warning(msg.str());
  }

  std::vector<double> pair_v;
  pair_v.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pair_v.push_back(config.interaction(i, j));
  }

  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> diag(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      if ((b >> i) & 1U) e -= shift[i];
    }
    std::size_t p = 0;
    for (int i = 0; i < n; ++i) {
      const bool bi = (b >> i) & 1U;
      for (int j = i + 1; j < n; ++j, ++p) {
        if (bi && ((b >> j) & 1U)) e += pair_v[p];
      }
    }
    diag[b] = e;
  }
  return Hamiltonian(n, std::move(diag), 0.5 * config.rabi_frequency);
}

}  // namespace qrc::dynamics
