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

#include "qrc/dynamics/propagator.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "qrc/error.h"
#include "qrc/log.h"

namespace qrc::dynamics {
namespace {

// Re <a|b>.
double real_dot(const Complex* a, const Complex* b, std::size_t n) {
  const double* x = reinterpret_cast<const double*>(a);
  const double* y = reinterpret_cast<const double*>(b);
  double s = 0.0;
  for (std::size_t k = 0; k < 2 * n; ++k) s += x[k] * y[k];
  return s;
}

double norm2(std::span<const Complex> v) {
  return std::sqrt(real_dot(v.data(), v.data(), v.size()));
}

// Lanczos tridiagonalization of H on the Krylov space of a unit vector,
// followed by exponentiation of the projected matrix.
class KrylovStepper {
 public:
  int max_dim() const { return max_m_; }

  KrylovStepper(const Hamiltonian& h, int max_dim)
      : h_(h),
        dim_(h.dimension()),
        max_m_(static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(max_dim), dim_))),
        basis_(static_cast<std::size_t>(max_m_ + 1) * dim_),
        w_(dim_) {}

  // Builds the basis for v (norm beta0 > 0). Returns the number of matvecs,
  // or -1 when the projected eigenproblem did not converge.
  int build(std::span<const Complex> v, double beta0) {
    alpha_.assign(static_cast<std::size_t>(max_m_), 0.0);
    beta_.assign(static_cast<std::size_t>(max_m_), 0.0);
    Complex* v0 = vec(0);
    for (std::size_t k = 0; k < dim_; ++k) v0[k] = v[k] / beta0;
    // Breakdown threshold relative to the operator scale.
    const auto [lo, hi] = h_.spectral_bounds();
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
    m_ = max_m_;
    exact_ = false;
    int matvecs = 0;
    for (int j = 0; j < max_m_; ++j) {
      const Complex* vj = vec(j);
      h_.apply(std::span<const Complex>(vj, dim_), w_);
      ++matvecs;
      const double a = real_dot(vj, w_.data(), dim_);
      alpha_[j] = a;
      for (std::size_t k = 0; k < dim_; ++k) w_[k] -= a * vj[k];
      if (j > 0) {
        const Complex* vp = vec(j - 1);
        const double b = beta_[j - 1];
        for (std::size_t k = 0; k < dim_; ++k) w_[k] -= b * vp[k];
      }
      const double b = norm2(w_);
      beta_[j] = b;
      if (b <= 1e-13 * scale) {
        // Invariant subspace found: the projection is exact.
        m_ = j + 1;
        exact_ = true;
        break;
      }
      Complex* vn = vec(j + 1);
      for (std::size_t k = 0; k < dim_; ++k) vn[k] = w_[k] / b;
    }
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha_.data(), m_);
    Eigen::VectorXd sub(std::max(m_ - 1, 0));
    for (int j = 0; j + 1 < m_; ++j) sub[j] = beta_[j];
    if (m_ == 1) {
      theta_ = diag;
      q_ = Eigen::MatrixXd::Ones(1, 1);
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
      solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      if (solver.info() != Eigen::Success) return -1;
      theta_ = solver.eigenvalues();
      q_ = solver.eigenvectors();
    }
    beta0_ = beta0;
    return matvecs;
  }

  // Estimated 2-norm error of the projected propagator over time tau.
  double error_estimate(double tau) const {
    if (exact_) return 0.0;
    Complex last(0.0, 0.0);
    for (int k = 0; k < m_; ++k) {
      last += q_(m_ - 1, k) * q_(0, k) * std::polar(1.0, -theta_[k] * tau);
    }
    return beta0_ * beta_[m_ - 1] * std::abs(last);
  }

  // out = beta0 V_m exp(-i tau T_m) e_1.
  void advance(double tau, std::span<Complex> out) const {
    std::vector<Complex> coeff(static_cast<std::size_t>(m_), Complex(0.0, 0.0));
    for (int k = 0; k < m_; ++k) {
      const Complex phase = q_(0, k) * std::polar(1.0, -theta_[k] * tau);
      for (int j = 0; j < m_; ++j) coeff[j] += q_(j, k) * phase;
    }
    std::fill(out.begin(), out.end(), Complex(0.0, 0.0));
    for (int j = 0; j < m_; ++j) {
      const Complex c = beta0_ * coeff[j];
      const double cr = c.real(), ci = c.imag();
      const double* vj = reinterpret_cast<const double*>(vec(j));
      double* o = reinterpret_cast<double*>(out.data());
      for (std::size_t k = 0; k < dim_; ++k) {
        const double vr = vj[2 * k], vi = vj[2 * k + 1];
        o[2 * k] += cr * vr - ci * vi;
        o[2 * k + 1] += cr * vi + ci * vr;
      }
    }
  }

 private:
  Complex* vec(int j) { return basis_.data() + static_cast<std::size_t>(j) * dim_; }
  const Complex* vec(int j) const { return basis_.data() + static_cast<std::size_t>(j) * dim_; }

  const Hamiltonian& h_;
  std::size_t dim_;
  int max_m_;
  std::vector<Complex> basis_;
  std::vector<Complex> w_;
  std::vector<double> alpha_, beta_;
  Eigen::VectorXd theta_;
  Eigen::MatrixXd q_;
  double beta0_ = 1.0;
  int m_ = 0;
  bool exact_ = false;
};

// Returns false when the substep budget is exhausted.
bool propagate_krylov(const Hamiltonian& h, std::vector<Complex>& state, double time,
                      const PropagatorOptions& options, PropagationStats& stats) {
  int krylov_dim = options.krylov_dim;
  auto stepper = std::make_unique<KrylovStepper>(h, krylov_dim);
  std::vector<Complex> next(state.size());
  double remaining = time;
  int substeps = 0;
  // Error budget per unit time, so the total over [0, time] stays below tolerance.
  const double rate = options.tolerance / time;
  while (remaining > 0.0) {
    if (substeps >= options.max_substeps) return false;
    const double beta0 = norm2(state);
    int matvecs = stepper->build(state, beta0);
    // Lost orthogonality can stall the tridiagonal QR; retry on a smaller basis.
    while (matvecs < 0 && krylov_dim > 8) {
      krylov_dim /= 2;
      stepper = std::make_unique<KrylovStepper>(h, krylov_dim);
      matvecs = stepper->build(state, beta0);
    }
    if (matvecs < 0) return false;
    stats.matvecs += matvecs;
    double tau = remaining;
    if (stepper->error_estimate(tau) > rate * tau) {
      // Bisect for the largest admissible step; the estimate is cheap.
      double ok = 0.0, bad = remaining;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (ok + bad);
        if (stepper->error_estimate(mid) <= rate * mid) {
          ok = mid;
        } else {
          bad = mid;
        }
        if (bad - ok <= 1e-3 * bad) break;
      }
      if (ok <= 0.0) return false;
      tau = ok;
    }
    stepper->advance(tau, next);
    state.swap(next);
    remaining = (tau >= remaining) ? 0.0 : remaining - tau;
    ++substeps;
    ++stats.substeps;
  }
  return true;
}

// J_0(x) .. J_kmax(x) for x > 0 by Miller's backward recurrence, normalized
// with J_0 + 2 sum_k J_2k = 1.
std::vector<double> bessel_j_sequence(double x, int kmax) {
  std::vector<double> j(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  const int start = kmax + 20 + static_cast<int>(std::sqrt(40.0 * std::max(kmax, 1)));
  double above = 0.0, cur = 1e-300, norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double below = 2.0 * k / x * cur - above;
    above = cur;
    cur = below;  // J_{k-1}
    if (k - 1 <= kmax) j[k - 1] = cur;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0 ? 1.0 : 2.0) * cur;
    // Rescale to keep the recurrence in range.
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      norm *= 1e-250;
      for (double& v : j) v *= 1e-250;
    }
  }
  for (double& v : j) v /= norm;
  return j;
}

// Chebyshev expansion of exp(-i H t): with H = c + r X and spec(X) in [-1, 1],
// exp(-i H t) = exp(-i c t) sum_k (2 - [k == 0]) (-i)^k J_k(r t) T_k(X).
void propagate_chebyshev(const Hamiltonian& h, std::vector<Complex>& state, double time,
                         const PropagatorOptions& options, PropagationStats& stats) {
  const auto [lo, hi] = h.spectral_bounds();
  const double center = 0.5 * (hi + lo);
  const double radius = std::max(0.5 * (hi - lo), 1e-12);
  const double x = radius * time;
  const std::size_t dim = state.size();
  const int n_atoms = h.n_atoms();

  // Scaled operator X = (H - c) / r.
  std::vector<double> diag(h.diagonal().begin(), h.diagonal().end());
  for (double& d : diag) d = (d - center) / radius;
  const double drive = h.drive_amplitude() / radius;

  // out = 2 X in - sub  (sub may be null: out = X in)
  auto recurrence = [&](const std::vector<Complex>& in, const std::vector<Complex>* sub,
                        std::vector<Complex>& out) {
    const double scale = sub ? 2.0 : 1.0;
    for (std::size_t b = 0; b < dim; ++b) out[b] = (scale * diag[b]) * in[b];
    if (sub) {
      for (std::size_t b = 0; b < dim; ++b) out[b] -= (*sub)[b];
    }
    const double g = scale * drive;
    if (g != 0.0) {
      for (int i = 0; i < n_atoms; ++i) {
        const std::size_t stride = std::size_t{1} << i;
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
          for (std::size_t k = base; k < base + stride; ++k) {
            out[k] += g * in[k + stride];
            out[k + stride] += g * in[k];
          }
        }
      }
    }
    ++stats.matvecs;
  };
  // acc += c * v with c = (-i)^n * coeff, i.e. a real multiple of 1, -i, -1 or i.
  auto accumulate = [&](std::vector<Complex>& acc, const std::vector<Complex>& v, int n,
                        double coeff) {
    double* a = reinterpret_cast<double*>(acc.data());
    const double* p = reinterpret_cast<const double*>(v.data());
    switch (n % 4) {
      case 0:
        for (std::size_t k = 0; k < 2 * dim; ++k) a[k] += coeff * p[k];
        break;
      case 1:  // -i (re + i im) = im - i re
        for (std::size_t k = 0; k < dim; ++k) {
          a[2 * k] += coeff * p[2 * k + 1];
          a[2 * k + 1] -= coeff * p[2 * k];
        }
        break;
      case 2:
        for (std::size_t k = 0; k < 2 * dim; ++k) a[k] -= coeff * p[k];
        break;
      default:  // +i
        for (std::size_t k = 0; k < dim; ++k) {
          a[2 * k] -= coeff * p[2 * k + 1];
          a[2 * k + 1] += coeff * p[2 * k];
        }
        break;
    }
  };

  // Terms decay super-exponentially once k exceeds x.
  const double beta0 = norm2(state);
  const double cutoff = 1e-3 * options.tolerance / std::max(beta0, 1e-300);
  const int max_terms = static_cast<int>(x + 12.0 * std::cbrt(std::max(x, 1.0)) + 40.0);
  const std::vector<double> jn = bessel_j_sequence(x, max_terms);

  std::vector<Complex> prev(state), cur(dim), next(dim), acc(dim, Complex(0.0, 0.0));
  accumulate(acc, prev, 0, jn[0]);
  recurrence(prev, nullptr, cur);
  accumulate(acc, cur, 1, 2.0 * jn[1]);
  int small_run = 0;
  for (int n = 2; n <= max_terms; ++n) {
    recurrence(cur, &prev, next);
    accumulate(acc, next, n, 2.0 * jn[n]);
    prev.swap(cur);
    cur.swap(next);
    if (n > x && std::abs(jn[n]) < cutoff) {
      if (++small_run >= 2) break;
    } else {
      small_run = 0;
    }
  }
  const Complex global = std::polar(1.0, -center * time);
  for (std::size_t k = 0; k < dim; ++k) state[k] = global * acc[k];
  ++stats.substeps;
}

void propagate_rk4(const Hamiltonian& h, std::vector<Complex>& state, double time,
                   const PropagatorOptions& options, PropagationStats& stats) {
  const auto [lo, hi] = h.spectral_bounds();
  const double radius = std::max({std::abs(lo), std::abs(hi), 1e-12});
  // With z = |E| dt, RK4 on a skew-Hermitian generator shrinks the norm by
  // ~z^6/144 and shifts the phase by ~z^5/120 per step. dt keeps the
  // accumulated drift under a tenth of the norm tolerance and the accumulated
  // phase error under a tenth of the error budget.
  const double drift_budget = 0.1 * options.norm_tolerance;
  const double phase_budget = 0.1 * options.tolerance;
  double z = std::pow(144.0 * drift_budget / (radius * time), 0.2);
  z = std::min({z, std::pow(120.0 * phase_budget / (radius * time), 0.25), 0.05});
  const long long steps = std::max<long long>(1, static_cast<long long>(std::ceil(radius * time / z)));
  const double dt = time / static_cast<double>(steps);
  const std::size_t dim = state.size();
  std::vector<Complex> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  const Complex mi(0.0, -1.0);
  for (long long s = 0; s < steps; ++s) {
    h.apply(state, k1);
    for (std::size_t k = 0; k < dim; ++k) tmp[k] = state[k] + 0.5 * dt * mi * k1[k];
    h.apply(tmp, k2);
    for (std::size_t k = 0; k < dim; ++k) tmp[k] = state[k] + 0.5 * dt * mi * k2[k];
    h.apply(tmp, k3);
    for (std::size_t k = 0; k < dim; ++k) tmp[k] = state[k] + dt * mi * k3[k];
    h.apply(tmp, k4);
    for (std::size_t k = 0; k < dim; ++k) {
      state[k] += dt / 6.0 * mi * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    stats.matvecs += 4;
  }
  stats.substeps += steps;
}

}  // namespace

QuantumState propagate(const Hamiltonian& h, const QuantumState& state, double time,
                       const PropagatorOptions& options, PropagationStats* stats) {
  if (state.dimension() != h.dimension()) {
    throw ConfigError("state dimension does not match the Hamiltonian");
  }
  if (!(time >= 0.0)) throw ConfigError("propagation time must be >= 0");
  if (time == 0.0) return state;
  PropagationStats local;
  PropagationStats& st = stats ? *stats : local;

  const double norm_in = state.norm();
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  bool done = false;
  if (options.method == PropagationMethod::kChebyshev) {
    propagate_chebyshev(h, amps, time, options, st);
    done = true;
  } else if (options.method == PropagationMethod::kKrylov) {
    done = propagate_krylov(h, amps, time, options, st);
    if (!done) {
      ++st.fallbacks;
      log_warning("Krylov propagator exceeded its substep budget; falling back to RK4");
      amps.assign(state.amplitudes().begin(), state.amplitudes().end());
    }
  }
  if (!done) propagate_rk4(h, amps, time, options, st);

  QuantumState out(state.n_atoms(), std::move(amps));
  const double drift = std::abs(out.norm() - norm_in);
  if (!(drift <= options.norm_tolerance)) {
    std::ostringstream msg;
    msg << "propagation norm drift " << drift << " exceeds tolerance " << options.norm_tolerance
        << " (t = " << time << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

std::vector<QuantumState> evolve(const Hamiltonian& h, const QuantumState& initial,
                                 const ReservoirConfig& config, const PropagatorOptions& options,
                                 PropagationStats* stats) {
  config.validate();
  require_normalized(initial);
  const double dt = config.snapshot_interval();
  std::vector<QuantumState> snapshots;
  snapshots.reserve(static_cast<std::size_t>(config.num_snapshots));
  const QuantumState* current = &initial;
  for (int m = 1; m <= config.num_snapshots; ++m) {
    snapshots.push_back(propagate(h, *current, dt, options, stats));
    current = &snapshots.back();
  }
  return snapshots;
}

}  // namespace qrc::dynamics
