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

#include "qrc/readout/mlp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qrc/error.h"
#include "qrc/rng.h"

namespace qrc::readout {
namespace {

constexpr std::uint64_t kShuffleStream = 1;
constexpr std::uint64_t kDropoutStream = 2;

struct Activations {
  std::vector<Eigen::MatrixXd> pre;   // Z_l, hidden layers only
  std::vector<Eigen::MatrixXd> post;  // input, then masked ReLU outputs
  Eigen::MatrixXd logits;
};

Activations run(const MlpParams& p, const Eigen::MatrixXd& x, const DropoutMasks* masks) {
  Activations a;
  a.post.push_back(x);
  const std::size_t hidden = p.layers.size() - 1;
  for (std::size_t l = 0; l < hidden; ++l) {
    Eigen::MatrixXd z = p.layers[l].weight * a.post.back();
    z.colwise() += p.layers[l].bias;
    Eigen::MatrixXd h = z.cwiseMax(0.0);
    if (masks) h = h.cwiseProduct((*masks)[l]);
    a.pre.push_back(std::move(z));
    a.post.push_back(std::move(h));
  }
  a.logits = p.layers.back().weight * a.post.back();
  a.logits.colwise() += p.layers.back().bias;
  return a;
}

// Backpropagates d loss / d logits; fills parameter gradients (if requested)
// and returns d loss / d input.
Eigen::MatrixXd backprop(const MlpParams& p, const Activations& a, Eigen::MatrixXd delta,
                         const DropoutMasks* masks, MlpParams* grads) {
  for (std::size_t l = p.layers.size(); l-- > 0;) {
    if (grads) {
      grads->layers[l].weight.noalias() = delta * a.post[l].transpose();
      grads->layers[l].bias = delta.rowwise().sum();
    }
    Eigen::MatrixXd up = p.layers[l].weight.transpose() * delta;
    if (l == 0) return up;
    const Eigen::MatrixXd& z = a.pre[l - 1];
    for (Eigen::Index j = 0; j < up.cols(); ++j) {
      for (Eigen::Index i = 0; i < up.rows(); ++i) {
        if (!(z(i, j) > 0.0)) up(i, j) = 0.0;
      }
    }
    if (masks) up = up.cwiseProduct((*masks)[l - 1]);
    delta = std::move(up);
  }
  return delta;
}

Eigen::MatrixXd softmax_columns(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) out.col(j) = softmax(logits.col(j));
  return out;
}

void check_input(const MlpParams& p, Eigen::Index size) {
  if (size != p.input_dim()) {
    throw ConfigError("MLP input has length " + std::to_string(size) + ", expected " +
                      std::to_string(p.input_dim()));
  }
}

DropoutMasks make_masks(const MlpParams& p, int batch, Rng& rng) {
  DropoutMasks masks;
  const double rate = p.dropout_rate;
  const double keep_scale = 1.0 / (1.0 - rate);
  for (std::size_t l = 0; l + 1 < p.layers.size(); ++l) {
    Eigen::MatrixXd m(p.layers[l].weight.rows(), batch);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform() < rate ? 0.0 : keep_scale;
    }
    masks.push_back(std::move(m));
  }
  return masks;
}

}  // namespace

MlpParams MlpParams::zeros(const std::vector<int>& sizes, double dropout_rate) {
  if (sizes.size() < 2) throw ConfigError("an MLP needs at least input and output sizes");
  MlpParams p;
  p.dropout_rate = dropout_rate;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    if (sizes[l] <= 0 || sizes[l + 1] <= 0) throw ConfigError("MLP layer sizes must be positive");
    p.layers.push_back({Eigen::MatrixXd::Zero(sizes[l + 1], sizes[l]),
                        Eigen::VectorXd::Zero(sizes[l + 1])});
  }
  p.validate();
  return p;
}

MlpParams MlpParams::he_uniform(const std::vector<int>& sizes, std::uint64_t seed,
                                double dropout_rate) {
  MlpParams p = zeros(sizes, dropout_rate);
  Rng rng(seed);
  for (Layer& layer : p.layers) {
    const double bound = std::sqrt(6.0 / static_cast<double>(layer.weight.cols()));
    for (Eigen::Index i = 0; i < layer.weight.rows(); ++i) {
      for (Eigen::Index j = 0; j < layer.weight.cols(); ++j) layer.weight(i, j) = rng.uniform(-bound, bound);
    }
  }
  return p;
}

std::vector<int> MlpParams::sizes() const {
  std::vector<int> s{input_dim()};
  for (const Layer& l : layers) s.push_back(static_cast<int>(l.weight.rows()));
  return s;
}

std::size_t MlpParams::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

bool MlpParams::all_finite() const {
  return std::all_of(layers.begin(), layers.end(),
                     [](const Layer& l) { return l.weight.allFinite() && l.bias.allFinite(); });
}

Eigen::VectorXd MlpParams::flatten() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index k = 0;
  for (const Layer& l : layers) {
    for (Eigen::Index i = 0; i < l.weight.rows(); ++i) {
      for (Eigen::Index j = 0; j < l.weight.cols(); ++j) out[k++] = l.weight(i, j);
    }
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) out[k++] = l.bias[i];
  }
  return out;
}

void MlpParams::unflatten(const Eigen::VectorXd& values) {
  if (static_cast<std::size_t>(values.size()) != parameter_count()) {
    throw ConfigError("parameter vector length does not match the architecture");
  }
  Eigen::Index k = 0;
  for (Layer& l : layers) {
    for (Eigen::Index i = 0; i < l.weight.rows(); ++i) {
      for (Eigen::Index j = 0; j < l.weight.cols(); ++j) l.weight(i, j) = values[k++];
    }
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) l.bias[i] = values[k++];
  }
}

void MlpParams::validate() const {
  if (layers.empty()) throw ConfigError("MLP has no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (layers[l].weight.rows() == 0 || layers[l].weight.cols() == 0 ||
        layers[l].bias.size() != layers[l].weight.rows()) {
      throw ConfigError("MLP layer " + std::to_string(l) + " has inconsistent shapes");
    }
    if (l > 0 && layers[l].weight.cols() != layers[l - 1].weight.rows()) {
      throw ConfigError("MLP layer " + std::to_string(l) + " does not match its predecessor");
    }
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ConfigError("dropout rate must lie in [0, 1)");
  }
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || batch_size <= 0 || max_epochs < 0 || !(epsilon > 0.0) ||
      !(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("invalid training configuration");
  }
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const double top = logits.maxCoeff();
  Eigen::VectorXd e = (logits.array() - top).exp();
  return e / e.sum();
}

double cross_entropy(const Eigen::VectorXd& logits, int label) {
  if (label < 0 || label >= logits.size()) throw ConfigError("label out of range");
  const double top = logits.maxCoeff();
  return top + std::log((logits.array() - top).exp().sum()) - logits[label];
}

int argmax(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return static_cast<int>(best);
}

Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& input) {
  check_input(params, input.size());
  return run(params, input, nullptr).logits.col(0);
}

Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs) {
  check_input(params, inputs.cols());
  return run(params, inputs.transpose(), nullptr).logits.transpose();
}

Eigen::MatrixXd forward_train(const MlpParams& params, const Eigen::MatrixXd& inputs_by_column,
                              const DropoutMasks& masks) {
  check_input(params, inputs_by_column.rows());
  return run(params, inputs_by_column, &masks).logits;
}

LossAndGrads loss_and_grads(const MlpParams& params, const Eigen::MatrixXd& inputs,
                            const std::vector<int>& labels, const DropoutMasks* masks) {
  if (inputs.rows() == 0) throw ConfigError("loss_and_grads: empty batch");
  if (static_cast<std::size_t>(inputs.rows()) != labels.size()) {
    throw ConfigError("loss_and_grads: label count mismatch");
  }
  check_input(params, inputs.cols());
  const Activations a = run(params, inputs.transpose(), masks);
  const double inv = 1.0 / static_cast<double>(labels.size());
  Eigen::MatrixXd delta = softmax_columns(a.logits);
  LossAndGrads out;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    out.loss += cross_entropy(a.logits.col(j), labels[j]);
    delta(labels[j], j) -= 1.0;
  }
  out.loss *= inv;
  delta *= inv;
  out.grads = MlpParams::zeros(params.sizes(), params.dropout_rate);
  backprop(params, a, std::move(delta), masks, &out.grads);
  return out;
}

Eigen::VectorXd input_gradient(const MlpParams& params, const Eigen::VectorXd& input, int label) {
  check_input(params, input.size());
  const Activations a = run(params, input, nullptr);
  if (label < 0 || label >= a.logits.rows()) throw ConfigError("label out of range");
  Eigen::MatrixXd delta = softmax(a.logits.col(0));
  delta(label, 0) -= 1.0;
  return backprop(params, a, std::move(delta), nullptr, nullptr).col(0);
}

LogitJacobian logit_jacobian(const MlpParams& params, const Eigen::VectorXd& input) {
  check_input(params, input.size());
  const Activations a = run(params, input, nullptr);
  const Eigen::Index c = a.logits.rows();
  // Seeding with the identity backpropagates every logit at once; column j of
  // the replicated activations is sample 0.
  Activations wide;
  for (const auto& m : a.pre) wide.pre.push_back(m.replicate(1, c));
  for (const auto& m : a.post) wide.post.push_back(m.replicate(1, c));
  const Eigen::MatrixXd back =
      backprop(params, wide, Eigen::MatrixXd::Identity(c, c), nullptr, nullptr);
  return {a.logits.col(0), back.transpose()};
}

double accuracy(const MlpParams& params, const Eigen::MatrixXd& inputs,
                const std::vector<int>& labels) {
  if (inputs.rows() == 0) return 0.0;
  const Eigen::MatrixXd logits = forward_batch(params, inputs);
  int hits = 0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    if (argmax(logits.row(i).transpose()) == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(inputs.rows());
}

TrainResult train(const MlpParams& init, const Eigen::MatrixXd& inputs,
                  const std::vector<int>& labels, const TrainConfig& config) {
  init.validate();
  config.validate();
  check_input(init, inputs.cols());
  const Eigen::Index n = inputs.rows();
  if (n == 0) throw ConfigError("train: empty training set");
  if (static_cast<std::size_t>(n) != labels.size()) throw ConfigError("train: label count mismatch");
  for (int y : labels) {
    if (y < 0 || y >= init.num_classes()) throw ConfigError("train: label out of range");
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (labels[a] != labels[b]) return labels[a] < labels[b];
    for (Eigen::Index k = 0; k < inputs.cols(); ++k) {
      if (inputs(a, k) != inputs(b, k)) return inputs(a, k) < inputs(b, k);
    }
    return false;
  });
  Eigen::MatrixXd x(inputs.cols(), n);  // canonical order, one sample per column
  std::vector<int> y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.col(i) = inputs.row(order[i]).transpose();
    y[i] = labels[order[i]];
  }

  TrainResult result{init, {}};
  MlpParams& p = result.params;
  MlpParams m = MlpParams::zeros(p.sizes(), p.dropout_rate);
  MlpParams v = m;
  const std::uint64_t shuffle_seed = derive_seed(config.seed, kShuffleStream);
  const std::uint64_t dropout_seed = derive_seed(config.seed, kDropoutStream);
  long long step = 0;
  std::vector<Eigen::Index> perm(n);

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    Rng shuffle(mix_seed(shuffle_seed, static_cast<std::uint64_t>(epoch)));
    shuffle.shuffle(perm);
    double loss_sum = 0.0;
    int hits = 0;
    int batch_index = 0;
    for (Eigen::Index start = 0; start < n; start += config.batch_size, ++batch_index) {
      const Eigen::Index b = std::min<Eigen::Index>(config.batch_size, n - start);
      Eigen::MatrixXd xb(x.rows(), b);
      std::vector<int> yb(b);
      for (Eigen::Index j = 0; j < b; ++j) {
        xb.col(j) = x.col(perm[start + j]);
        yb[j] = y[perm[start + j]];
      }
      Rng drop(mix_seed(dropout_seed, static_cast<std::uint64_t>(epoch),
                        static_cast<std::uint64_t>(batch_index)));
      const DropoutMasks masks = make_masks(p, static_cast<int>(b), drop);

      const Activations a = run(p, xb, &masks);
      Eigen::MatrixXd delta = softmax_columns(a.logits);
      double batch_loss = 0.0;
      for (Eigen::Index j = 0; j < b; ++j) {
        batch_loss += cross_entropy(a.logits.col(j), yb[j]);
        if (argmax(a.logits.col(j)) == yb[j]) ++hits;
        delta(yb[j], j) -= 1.0;
      }
      if (!std::isfinite(batch_loss)) {
        std::ostringstream msg;
        msg << "non-finite training loss at epoch " << epoch << ", batch " << batch_index;
        throw NumericalError(msg.str());
      }
      loss_sum += batch_loss;
      delta /= static_cast<double>(b);
      MlpParams g = m;
      backprop(p, a, std::move(delta), &masks, &g);

      ++step;
      const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
      auto adam = [&](auto& theta, auto& mom, auto& vel, const auto& grad) {
        mom = config.beta1 * mom + (1.0 - config.beta1) * grad;
        vel = config.beta2 * vel + (1.0 - config.beta2) * grad.cwiseProduct(grad);
        theta.array() -= config.learning_rate * (mom.array() / c1) /
                         ((vel.array() / c2).sqrt() + config.epsilon);
      };
      for (std::size_t l = 0; l < p.layers.size(); ++l) {
        adam(p.layers[l].weight, m.layers[l].weight, v.layers[l].weight, g.layers[l].weight);
        adam(p.layers[l].bias, m.layers[l].bias, v.layers[l].bias, g.layers[l].bias);
      }
      if (!p.all_finite()) {
        std::ostringstream msg;
        msg << "non-finite parameters after epoch " << epoch << ", batch " << batch_index;
        throw NumericalError(msg.str());
      }
    }
    result.history.push_back({loss_sum / static_cast<double>(n),
                              static_cast<double>(hits) / static_cast<double>(n)});
  }
  return result;
}

}  // namespace qrc::readout
