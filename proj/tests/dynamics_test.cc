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

#include <gtest/gtest.h>

#include <cmath>

#include "oracle_values.h"
#include "qrc/dynamics/hamiltonian.h"
#include "qrc/dynamics/observables.h"
#include "qrc/dynamics/propagator.h"
#include "qrc/dynamics/reservoir.h"
#include "qrc/error.h"
#include "test_support.h"

namespace qrc::dynamics {
namespace {

using testing::dense_evolve;
using testing::dense_hamiltonian;
using testing::to_vector;

TEST(Hamiltonian, SingleAtomWithoutDetuningHasZeroDiagonal) {
  ReservoirConfig c = ReservoirConfig::reference(1);
  const std::vector<double> d{0.0};
  const Hamiltonian h = build_hamiltonian(c, d);
  ASSERT_EQ(h.dimension(), 2u);
  EXPECT_EQ(h.diagonal()[0], 0.0);
  EXPECT_EQ(h.diagonal()[1], 0.0);
  EXPECT_DOUBLE_EQ(h.drive_amplitude(), c.rabi_frequency / 2);
}

TEST(Hamiltonian, ReferencePairInteraction) {
  const ReservoirConfig c = ReservoirConfig::reference(2);
  EXPECT_NEAR(c.interaction(0, 1), kTwoPi * 0.002, 1e-15);
  EXPECT_DOUBLE_EQ(c.interaction(0, 1), c.c6_coefficient / 1e6);
}

TEST(Hamiltonian, DoublyExcitedDiagonal) {
  const ReservoirConfig c = ReservoirConfig::reference(2);
  const std::vector<double> d{c.detuning_max, c.detuning_max};
  const Hamiltonian h = build_hamiltonian(c, d);
  EXPECT_NEAR(h.diagonal()[3], -2 * 0.15 * c.detuning_max + kTwoPi * 0.002, 1e-12);
  EXPECT_NEAR(h.diagonal()[1], -0.15 * c.detuning_max, 1e-12);
  EXPECT_EQ(h.diagonal()[0], 0.0);
}

TEST(Hamiltonian, ZeroDriveActsDiagonally) {
  Rng rng(11);
  ReservoirConfig c = ReservoirConfig::reference(4);
  c.rabi_frequency = 0.0;
  const Hamiltonian h = build_hamiltonian(c, testing::random_detunings(rng, c));
  std::vector<Complex> in(h.dimension()), out(h.dimension());
  for (auto& a : in) a = {rng.normal(), rng.normal()};
  h.apply(in, out);
  for (std::size_t b = 0; b < in.size(); ++b) EXPECT_EQ(out[b], h.diagonal()[b] * in[b]);
}

TEST(Hamiltonian, DriveFlipsSingleAtom) {
  ReservoirConfig c = ReservoirConfig::reference(1);
  c.rabi_frequency = 2.0;
  const Hamiltonian h = build_hamiltonian(c, std::vector<double>{0.0});
  const std::vector<Complex> out = h.apply(QuantumState::all_ground(1));
  EXPECT_EQ(out[0], Complex(0.0));
  EXPECT_EQ(out[1], Complex(1.0));
}

TEST(Hamiltonian, MatchesDenseKroneckerAssembly) {
  Rng rng(5);
  for (int n = 1; n <= 5; ++n) {
    const ReservoirConfig c = testing::random_config(rng, n);
    const std::vector<double> d = testing::random_detunings(rng, c);
    const Hamiltonian h = build_hamiltonian(c, d);
    const Eigen::MatrixXd dense = dense_hamiltonian(c, d);
    for (std::size_t b = 0; b < h.dimension(); ++b) {
      const std::vector<Complex> col = h.apply(QuantumState::basis(n, b));
      for (std::size_t a = 0; a < h.dimension(); ++a) {
        EXPECT_NEAR(col[a].real(), dense(a, b), 1e-12);
        EXPECT_EQ(col[a].imag(), 0.0);
      }
    }
  }
}

TEST(Hamiltonian, ExpectationValueIsReal) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const ReservoirConfig c = testing::random_config(rng, n);
    const Hamiltonian h = build_hamiltonian(c, testing::random_detunings(rng, c));
    std::vector<Complex> psi(h.dimension()), hpsi(h.dimension());
    for (auto& a : psi) a = {rng.normal(), rng.normal()};
    h.apply(psi, hpsi);
    Complex e = 0.0;
    double scale = 0.0;
    for (std::size_t b = 0; b < psi.size(); ++b) {
      e += std::conj(psi[b]) * hpsi[b];
      scale += std::abs(psi[b]) * std::abs(hpsi[b]);
    }
    EXPECT_LE(std::abs(e.imag()), 1e-12 * std::max(scale, 1.0));
  }
}

TEST(Hamiltonian, SpectralBoundsEncloseSpectrum) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const ReservoirConfig c = testing::random_config(rng, n);
    const std::vector<double> d = testing::random_detunings(rng, c);
    const auto [lo, hi] = build_hamiltonian(c, d).spectral_bounds();
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense_hamiltonian(c, d)).eigenvalues();
    EXPECT_LE(lo, ev.minCoeff());
    EXPECT_GE(hi, ev.maxCoeff());
  }
}

TEST(Hamiltonian, RejectsBadDetunings) {
  const ReservoirConfig c = ReservoirConfig::reference(3);
  EXPECT_THROW(build_hamiltonian(c, std::vector<double>{1.0, 2.0}), ConfigError);
  EXPECT_THROW(build_hamiltonian(c, std::vector<double>{1.0, NAN, 2.0}), ConfigError);
}

class PropagatorMethods : public ::testing::TestWithParam<PropagationMethod> {};

TEST_P(PropagatorMethods, MatchDenseExponential) {
  Rng rng(21);
  PropagatorOptions opt;
  opt.method = GetParam();
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 5;
    const ReservoirConfig c = testing::random_config(rng, n);
    const std::vector<double> d = testing::random_detunings(rng, c);
    const Hamiltonian h = build_hamiltonian(c, d);
    const Eigen::MatrixXd dense = dense_hamiltonian(c, d);
    const QuantumState psi0 = initial_state(c);
    const std::vector<QuantumState> snaps = evolve(h, psi0, c, opt);
    ASSERT_EQ(static_cast<int>(snaps.size()), c.num_snapshots);
    for (int m = 0; m < c.num_snapshots; ++m) {
      const testing::CVector ref = dense_evolve(dense, to_vector(psi0), (m + 1) * c.snapshot_interval());
      EXPECT_LE((to_vector(snaps[m]) - ref).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_NEAR(snaps[m].norm(), 1.0, 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(All, PropagatorMethods,
                         ::testing::Values(PropagationMethod::kChebyshev, PropagationMethod::kKrylov,
                                           PropagationMethod::kRungeKutta4));

TEST(Propagator, ZeroTimeIsIdentity) {
  const ReservoirConfig c = ReservoirConfig::reference(3);
  const Hamiltonian h = build_hamiltonian(c, std::vector<double>(3, 1.0));
  const QuantumState psi = QuantumState::all_plus(3);
  EXPECT_EQ(propagate(h, psi, 0.0), psi);
}

TEST(Propagator, DiagonalEvolutionKeepsBasisState) {
  ReservoirConfig c = ReservoirConfig::reference(4);
  c.rabi_frequency = 0.0;
  c.initial_state = InitialState::kAllGround;
  const Hamiltonian h = build_hamiltonian(c, std::vector<double>{1.0, 5.0, 9.0, 30.0});
  for (const QuantumState& s : evolve(h, initial_state(c), c)) {
    EXPECT_NEAR(std::abs(s[0]), 1.0, 1e-12);
    for (std::size_t b = 1; b < s.dimension(); ++b) EXPECT_LE(std::abs(s[b]), 1e-12);
  }
}

TEST(Propagator, SingleAtomPlusStateIsStationary) {
  const ReservoirConfig c = ReservoirConfig::reference(1);
  const Hamiltonian h = build_hamiltonian(c, std::vector<double>{0.0});
  for (const QuantumState& s : evolve(h, QuantumState::all_plus(1), c)) {
    EXPECT_NEAR(measure_observables(s, 1)[0], 0.0, 1e-9);
  }
}

TEST(Propagator, SingleAtomMatchesTwoLevelOracle) {
  const ReservoirConfig c = ReservoirConfig::reference(1);
  const Eigen::VectorXd e = reservoir_embed(c, std::vector<double>{c.detuning_max});
  ASSERT_EQ(e.size(), 6);
  for (int m = 0; m < 6; ++m) EXPECT_NEAR(e[m], oracle::kSingleAtomSz[m], 1e-8);
}

TEST(Observables, GroundPair) {
  const std::vector<double> o = measure_observables(QuantumState::all_ground(2), 2);
  EXPECT_EQ(o, (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(Observables, SymmetricSingleExcitation) {
  const double a = 1.0 / std::sqrt(2.0);
  const QuantumState s(2, {0.0, a, a, 0.0});
  const std::vector<double> o = measure_observables(s, 2);
  EXPECT_NEAR(o[0], 0.0, 1e-15);
  EXPECT_NEAR(o[1], 0.0, 1e-15);
  EXPECT_NEAR(o[2], -1.0, 1e-15);
}

TEST(Observables, RandomStatesStayInRange) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    std::vector<Complex> amp(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& x : amp) {
      x = {rng.normal(), rng.normal()};
      norm += std::norm(x);
    }
    for (auto& x : amp) x /= std::sqrt(norm);
    const std::vector<double> o = measure_observables(QuantumState(n, amp), n);
    ASSERT_EQ(static_cast<int>(o.size()), n + n * (n - 1) / 2);
    for (double v : o) {
      EXPECT_GE(v, -1.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Observables, RejectsUnnormalizedState) {
  EXPECT_THROW(measure_observables(QuantumState(1, {1.0, 1.0}), 1), ConfigError);
}

TEST(Reservoir, ReferenceEmbeddingLength) {
  const ReservoirConfig c = ReservoirConfig::reference(8);
  EXPECT_EQ(c.embedding_dim(), 216);
  EXPECT_EQ(reservoir_embed(c, std::vector<double>(8, 10.0)).size(), 216);
}

TEST(Reservoir, ReferenceChainMatchesDenseOracle) {
  const ReservoirConfig c = ReservoirConfig::reference(8);
  std::vector<double> d(8);
  for (int i = 0; i < 8; ++i) d[i] = c.detuning_max * (i + 1) / 9.0;
  const Eigen::VectorXd e = reservoir_embed(c, d);
  ASSERT_EQ(e.size(), 216);
  for (int k = 0; k < 216; ++k) EXPECT_NEAR(e[k], oracle::kChainEmbedding[k], 1e-8) << k;
}

TEST(Reservoir, ZeroDriveFreezesSnapshots) {
  ReservoirConfig c = ReservoirConfig::reference(4);
  c.rabi_frequency = 0.0;
  const Eigen::VectorXd e = reservoir_embed(c, std::vector<double>{3.0, 20.0, 41.0, 62.0});
  const int block = c.observables_per_snapshot();
  for (int m = 1; m < c.num_snapshots; ++m) {
    EXPECT_LE((e.segment(m * block, block) - e.head(block)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Reservoir, DistinctDetuningsGiveDistinctEmbeddings) {
  Rng rng(17);
  const ReservoirConfig c = ReservoirConfig::reference(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd a = reservoir_embed(c, testing::random_detunings(rng, c));
    const Eigen::VectorXd b = reservoir_embed(c, testing::random_detunings(rng, c));
    EXPECT_GT((a - b).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(Reservoir, EmbeddingIsBitwiseDeterministic) {
  const ReservoirConfig c = ReservoirConfig::reference(6);
  const std::vector<double> d{1.0, 7.0, 13.0, 29.0, 41.0, 60.0};
  const Eigen::VectorXd a = reservoir_embed(c, d);
  const Eigen::VectorXd b = reservoir_embed(c, d);
  EXPECT_EQ(std::memcmp(a.data(), b.data(), sizeof(double) * a.size()), 0);
}

TEST(ReservoirJacobian, ZeroDriveSingleSiteRowsVanish) {
  ReservoirConfig c = ReservoirConfig::reference(3);
  c.rabi_frequency = 0.0;
  const Eigen::MatrixXd j = reservoir_jacobian(c, std::vector<double>{10.0, 20.0, 30.0});
  const int block = c.observables_per_snapshot();
  for (int m = 0; m < c.num_snapshots; ++m) {
    for (int i = 0; i < c.n_atoms; ++i) EXPECT_LE(j.row(m * block + i).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(ReservoirJacobian, SingleAtomMatchesOracleDerivative) {
  const ReservoirConfig c = ReservoirConfig::reference(1);
  const Eigen::MatrixXd j = reservoir_jacobian(c, std::vector<double>{kTwoPi * 5.0});
  ASSERT_EQ(j.rows(), 6);
  ASSERT_EQ(j.cols(), 1);
  for (int m = 0; m < 6; ++m) EXPECT_NEAR(j(m, 0), oracle::kSingleAtomDerivative[m], 1e-4);
}

TEST(ReservoirJacobian, MirrorSymmetricChain) {
  const int n = 5;
  const ReservoirConfig c = ReservoirConfig::reference(n);
  const Eigen::MatrixXd j = reservoir_jacobian(c, std::vector<double>(n, kTwoPi * 4.0));
  const int block = c.observables_per_snapshot();
  // Row of each observable under the site reversal i -> n - 1 - i.
  std::vector<int> pair_row(n * n, -1);
  int p = n;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) pair_row[a * n + b] = p++;
  }
  std::vector<int> mirror(block);
  for (int i = 0; i < n; ++i) mirror[i] = n - 1 - i;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) mirror[pair_row[a * n + b]] = pair_row[(n - 1 - b) * n + (n - 1 - a)];
  }
  for (int m = 0; m < c.num_snapshots; ++m) {
    for (int o = 0; o < block; ++o) {
      for (int col = 0; col < n; ++col) {
        EXPECT_NEAR(j(m * block + o, col), j(m * block + mirror[o], n - 1 - col), 1e-6);
      }
    }
  }
}

TEST(ReservoirJacobian, MaskedColumnsStayZero) {
  const ReservoirConfig c = ReservoirConfig::reference(3);
  JacobianOptions opt;
  opt.mask = {true, false, true};
  const Eigen::MatrixXd j = reservoir_jacobian(c, std::vector<double>{10.0, 20.0, 30.0}, opt);
  EXPECT_EQ(j.col(1).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT(j.col(0).cwiseAbs().maxCoeff(), 0.0);
}

}  // namespace
}  // namespace qrc::dynamics
