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
#include <cstring>

#include "qrc/error.h"
#include "qrc/readout/checkpoint.h"
#include "qrc/readout/mlp.h"
#include "test_support.h"

namespace qrc::readout {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

bool bitwise_equal(const VectorXd& a, const VectorXd& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

MlpParams hand_net() {
  MlpParams p = MlpParams::zeros({2, 2, 2}, 0.0);
  p.layers[0].weight << 1, 2, 3, -1;
  p.layers[0].bias << 0.5, -1;
  p.layers[1].weight << 1, -1, 2, 0.5;
  p.layers[1].bias << 0, 1;
  return p;
}

TEST(Mlp, ZeroNetGivesUniformSoftmax) {
  const MlpParams p = MlpParams::zeros({5, 4, 3, 3});
  const VectorXd logits = forward(p, VectorXd::Ones(5));
  EXPECT_EQ(logits, VectorXd::Zero(3));
  EXPECT_LE((softmax(logits).array() - 1.0 / 3).abs().maxCoeff(), 1e-16);
  EXPECT_NEAR(cross_entropy(logits, 1), std::log(3.0), 1e-15);
}

TEST(Mlp, HandComputedLogits) {
  // z1 = (1 - 4 + 0.5, 3 + 2 - 1) = (-2.5, 4); relu -> (0, 4);
  // logits = (0 - 4 + 0, 0 + 2 + 1) = (-4, 3).
  const VectorXd logits = forward(hand_net(), VectorXd{{1.0, -2.0}});
  EXPECT_DOUBLE_EQ(logits[0], -4.0);
  EXPECT_DOUBLE_EQ(logits[1], 3.0);
}

TEST(Mlp, EvalModeIsDeterministic) {
  const MlpParams p = MlpParams::he_uniform({6, 8, 4, 3}, 1, 0.5);
  Rng rng(1);
  const VectorXd x = testing::random_vector(rng, 6, -1, 1);
  EXPECT_TRUE(bitwise_equal(forward(p, x), forward(p, x)));
  const MatrixXd batch = forward_batch(p, x.transpose());
  EXPECT_TRUE(bitwise_equal(VectorXd(batch.row(0).transpose()), forward(p, x)));
}

TEST(Mlp, HeUniformBoundsAndSizes) {
  const MlpParams p = MlpParams::he_uniform({216, 64, 32, 10}, 9);
  EXPECT_EQ(p.sizes(), (std::vector<int>{216, 64, 32, 10}));
  EXPECT_EQ(p.parameter_count(), 216u * 64 + 64 + 64 * 32 + 32 + 32 * 10 + 10);
  EXPECT_LE(p.layers[0].weight.cwiseAbs().maxCoeff(), std::sqrt(6.0 / 216));
  EXPECT_EQ(p.layers[1].bias, VectorXd::Zero(32));
  MlpParams q = MlpParams::zeros(p.sizes());
  q.unflatten(p.flatten());
  EXPECT_TRUE(bitwise_equal(q.flatten(), p.flatten()));
}

// Loss of a batch as a function of the flattened parameters.
double loss_at(MlpParams p, const VectorXd& theta, const MatrixXd& x, const std::vector<int>& y) {
  p.unflatten(theta);
  return loss_and_grads(p, x, y).loss;
}

TEST(Mlp, ParameterGradientsMatchFiniteDifferences) {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    MlpParams p = MlpParams::he_uniform({4, 6, 5, 3}, 100 + trial);
    for (auto& layer : p.layers) layer.bias = testing::random_vector(rng, layer.bias.size(), -0.5, 0.5);
    MatrixXd x(7, 4);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
    std::vector<int> y(7);
    for (int& v : y) v = static_cast<int>(rng.below(3));
    const VectorXd g = loss_and_grads(p, x, y).grads.flatten();
    const VectorXd theta = p.flatten();
    VectorXd fd(theta.size());
    const double h = 1e-6;
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
      VectorXd tp = theta, tm = theta;
      tp[k] += h;
      tm[k] -= h;
      fd[k] = (loss_at(p, tp, x, y) - loss_at(p, tm, x, y)) / (2 * h);
    }
    EXPECT_LT(testing::normwise_error(g, fd), 1e-5);
  }
}

TEST(Mlp, DuplicatedSampleKeepsMeanLoss) {
  const MlpParams p = MlpParams::he_uniform({3, 4, 2}, 3);
  const MatrixXd one{{0.2, -0.4, 0.9}};
  MatrixXd two(2, 3);
  two << one, one;
  EXPECT_DOUBLE_EQ(loss_and_grads(p, one, {1}).loss, loss_and_grads(p, two, {1, 1}).loss);
  EXPECT_THROW(loss_and_grads(p, MatrixXd(0, 3), {}), ConfigError);
  EXPECT_THROW(loss_and_grads(p, one, {2}), ConfigError);
}

TEST(Mlp, InputGradientMatchesFiniteDifferences) {
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    MlpParams p = MlpParams::he_uniform({5, 7, 6, 4}, 200 + trial);
    for (auto& layer : p.layers) layer.bias = testing::random_vector(rng, layer.bias.size(), -0.5, 0.5);
    const VectorXd x = testing::random_vector(rng, 5, -1, 1);
    const int label = static_cast<int>(rng.below(4));
    const VectorXd g = input_gradient(p, x, label);
    VectorXd fd(5);
    const double h = 1e-6;
    for (int k = 0; k < 5; ++k) {
      VectorXd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      fd[k] = (cross_entropy(forward(p, xp), label) - cross_entropy(forward(p, xm), label)) / (2 * h);
    }
    EXPECT_LT(testing::normwise_error(g, fd), 1e-5);

    const LogitJacobian lj = logit_jacobian(p, x);
    for (int k = 0; k < 5; ++k) {
      VectorXd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const VectorXd col = (forward(p, xp) - forward(p, xm)) / (2 * h);
      EXPECT_LT(testing::normwise_error(lj.jacobian.col(k), col), 1e-5);
    }
  }
}

TEST(Mlp, ZeroNetHasZeroInputGradient) {
  const MlpParams p = MlpParams::zeros({4, 3, 2});
  EXPECT_EQ(input_gradient(p, VectorXd::Ones(4), 0), VectorXd::Zero(4));
}

TEST(Mlp, LinearRegionJacobianIsConstant) {
  MlpParams p = MlpParams::zeros({3, 4, 2}, 0.0);
  p.layers[0].weight.setConstant(0.5);
  p.layers[0].bias.setConstant(1.0);
  p.layers[1].weight << 1, -2, 3, 0.5, -1, 0.25, 2, 1;
  const MatrixXd a = logit_jacobian(p, VectorXd{{0.1, 0.2, 0.3}}).jacobian;
  const MatrixXd b = logit_jacobian(p, VectorXd{{0.9, 0.4, 0.7}}).jacobian;
  EXPECT_EQ(a, b);
}

struct Toy {
  MatrixXd x;
  std::vector<int> y;
};

Toy separable_toy(int n) {
  Rng rng(5);
  Toy t{MatrixXd(n, 2), std::vector<int>(n)};
  for (int i = 0; i < n; ++i) {
    const int label = i % 2;
    t.x(i, 0) = rng.uniform(0.1, 1.0) * (label == 0 ? -1 : 1);
    t.x(i, 1) = rng.uniform(-1.0, 1.0);
    t.y[i] = label;
  }
  return t;
}

TEST(Train, SeparableToyReachesFullAccuracy) {
  const Toy t = separable_toy(64);
  TrainConfig cfg;
  cfg.batch_size = 16;
  cfg.max_epochs = 200;
  cfg.learning_rate = 1e-2;
  cfg.seed = 7;
  const TrainResult r = train(MlpParams::he_uniform({2, 8, 8, 2}, 1), t.x, t.y, cfg);
  EXPECT_EQ(static_cast<int>(r.history.size()), 200);
  EXPECT_DOUBLE_EQ(accuracy(r.params, t.x, t.y), 1.0);
}

TEST(Train, SmoothedLossDecreasesEarly) {
  const Toy t = separable_toy(64);
  TrainConfig cfg;
  cfg.batch_size = 16;
  cfg.max_epochs = 30;
  cfg.seed = 3;
  const TrainResult r = train(MlpParams::he_uniform({2, 8, 8, 2}, 2), t.x, t.y, cfg);
  std::vector<double> avg;
  for (std::size_t e = 2; e < r.history.size(); ++e) {
    avg.push_back((r.history[e].loss + r.history[e - 1].loss + r.history[e - 2].loss) / 3);
  }
  for (std::size_t k = 1; k < avg.size(); ++k) EXPECT_LE(avg[k], avg[k - 1] + 1e-12);
}

TEST(Train, SeedDeterminismAndRowOrderInvariance) {
  const Toy t = separable_toy(40);
  TrainConfig cfg;
  cfg.batch_size = 8;
  cfg.max_epochs = 10;
  cfg.seed = 11;
  const MlpParams init = MlpParams::he_uniform({2, 6, 2}, 4, 0.2);
  const TrainResult a = train(init, t.x, t.y, cfg);
  const TrainResult b = train(init, t.x, t.y, cfg);
  EXPECT_TRUE(bitwise_equal(a.params.flatten(), b.params.flatten()));

  Toy rev{t.x.colwise().reverse(), std::vector<int>(t.y.rbegin(), t.y.rend())};
  const TrainResult c = train(init, rev.x, rev.y, cfg);
  EXPECT_TRUE(bitwise_equal(a.params.flatten(), c.params.flatten()));

  cfg.seed = 12;
  EXPECT_FALSE(bitwise_equal(a.params.flatten(), train(init, t.x, t.y, cfg).params.flatten()));
}

TEST(Train, DivergenceRaisesNumericalError) {
  const Toy t = separable_toy(16);
  TrainConfig cfg;
  cfg.batch_size = 4;
  cfg.max_epochs = 50;
  cfg.learning_rate = 1e300;
  EXPECT_THROW(train(MlpParams::he_uniform({2, 4, 2}, 5), t.x * 1e300, t.y, cfg), NumericalError);
}

TEST(Checkpoint, RoundTripIsBitwise) {
  Checkpoint cp{MlpParams::he_uniform({7, 5, 3}, 8, 0.01), TrainConfig{}};
  cp.train_config.seed = 0xdeadbeefcafef00dULL;
  const Checkpoint back = decode_checkpoint(encode_checkpoint(cp));
  EXPECT_TRUE(bitwise_equal(back.params.flatten(), cp.params.flatten()));
  EXPECT_EQ(back.params.sizes(), cp.params.sizes());
  EXPECT_EQ(back.params.dropout_rate, 0.01);
  EXPECT_EQ(back.train_config.seed, cp.train_config.seed);
  EXPECT_EQ(back.train_config.batch_size, 64);
  std::string bytes = encode_checkpoint(cp);
  bytes[30] ^= 4;
  EXPECT_THROW(decode_checkpoint(bytes), DataError);
}

}  // namespace
}  // namespace qrc::readout
