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

#include "qrc/attacks/attacks.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include "qrc/error.h"
#include "qrc/rng.h"

namespace qrc::attacks {
namespace {

Eigen::VectorXd sign_of(const Eigen::VectorXd& g) {
  Eigen::VectorXd s(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) s[i] = g[i] > 0.0 ? 1.0 : (g[i] < 0.0 ? -1.0 : 0.0);
  return s;
}

Eigen::VectorXd clip(const Eigen::VectorXd& x, std::pair<double, double> bounds) {
  return x.cwiseMax(bounds.first).cwiseMin(bounds.second);
}

bool same_bits(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

void check_input(const Classifier& model, const Eigen::VectorXd& x) {
  if (x.size() != model.input_dim()) {
    throw ConfigError("attack input has length " + std::to_string(x.size()) + ", expected " +
                      std::to_string(model.input_dim()));
  }
}

void check_budgets(const std::vector<double>& epsilons) {
  for (double e : epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("attack budget must be finite and >= 0");
  }
}

std::vector<AttackResult> fgsm_sweep(const Classifier& model, const Eigen::VectorXd& x, int label,
                                     const std::vector<double>& epsilons) {
  std::vector<AttackResult> out(epsilons.size());
  Eigen::VectorXd s;
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (epsilons[k] == 0.0) {
      out[k].adversarial = x;
      continue;
    }
    if (s.size() == 0) {
      s = sign_of(model.loss_gradient(x, label).gradient);
      out[k].gradient_evaluations = 1;
    }
    out[k].adversarial = clip(x + epsilons[k] * s, model.input_bounds());
    out[k].iterations = 1;
  }
  return out;
}

struct PgdTrack {
  Eigen::VectorXd x, prev, lo, hi;
  int steps_done = 0;
  bool done = false;
};

std::vector<AttackResult> pgd_sweep(const Classifier& model, const Eigen::VectorXd& x0, int label,
                                    const AttackSpec& spec, const std::vector<double>& epsilons) {
  const auto bounds = model.input_bounds();
  std::vector<AttackResult> out(epsilons.size());
  std::vector<PgdTrack> tracks(epsilons.size());
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    PgdTrack& t = tracks[k];
    const double eps = epsilons[k];
    if (eps == 0.0) {
      t.x = x0;
      t.done = true;
      continue;
    }
    t.lo = (x0.array() - eps).cwiseMax(bounds.first);
    t.hi = (x0.array() + eps).cwiseMin(bounds.second);
    t.x = x0;
    if (spec.random_start) {
      Rng rng(mix_seed(spec.seed, std::bit_cast<std::uint64_t>(eps)));
      for (Eigen::Index i = 0; i < t.x.size(); ++i) t.x[i] += rng.uniform(-eps, eps);
      t.x = t.x.cwiseMax(t.lo).cwiseMin(t.hi);
    }
  }

  std::vector<std::size_t> owner(epsilons.size());
  std::vector<Eigen::VectorXd> signs(epsilons.size());
  for (int step = 0; step < spec.steps; ++step) {
    bool any = false;
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      if (tracks[k].done) continue;
      any = true;
      owner[k] = k;
      for (std::size_t j = 0; j < k; ++j) {
        if (!tracks[j].done && owner[j] == j && same_bits(tracks[j].x, tracks[k].x)) {
          owner[k] = j;
          break;
        }
      }
      if (owner[k] == k) {
        signs[k] = sign_of(model.loss_gradient(tracks[k].x, label).gradient);
        ++out[k].gradient_evaluations;
      }
    }
    if (!any) break;
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      PgdTrack& t = tracks[k];
      if (t.done) continue;
      Eigen::VectorXd next =
          (t.x + spec.step_size * signs[owner[k]]).cwiseMax(t.lo).cwiseMin(t.hi);
      t.steps_done = step + 1;
      const int remaining = spec.steps - t.steps_done;
      if (same_bits(next, t.x)) {
        t.done = true;  // fixed point
      } else if (step > 0 && same_bits(next, t.prev)) {
        // 2-cycle: iterates alternate between next and t.x from here on.
        t.done = true;
        if (remaining % 2 == 0) t.x = std::move(next);
      } else {
        t.prev = std::move(t.x);
        t.x = std::move(next);
      }
    }
  }
  for (std::size_t k = 0; k < tracks.size(); ++k) {
    out[k].adversarial = std::move(tracks[k].x);
    out[k].iterations = epsilons[k] == 0.0 ? 0 : spec.steps;
  }
  return out;
}

struct DeepFoolTrajectory {
  Eigen::VectorXd total;  // accumulated boundary steps
  int iterations = 0;
  int gradient_evaluations = 0;
  bool degenerate = false;
};

DeepFoolTrajectory deepfool_trajectory(const Classifier& model, const Eigen::VectorXd& x0,
                                       int label, const AttackSpec& spec) {
  DeepFoolTrajectory tr;
  tr.total = Eigen::VectorXd::Zero(x0.size());
  Eigen::VectorXd f = model.logits(x0);
  const int k0 = readout::argmax(f);
  if (label >= 0 && k0 != label) return tr;
  Eigen::VectorXd x = x0;
  for (int it = 0; it < spec.steps; ++it) {
    const LogitJacobian lj = model.logit_jacobian(x);
    ++tr.gradient_evaluations;
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd step;
    for (int c = 0; c < model.num_classes(); ++c) {
      if (c == k0) continue;
      const Eigen::VectorXd w = (lj.jacobian.row(c) - lj.jacobian.row(k0)).transpose();
      const double wn = w.norm();
      if (!(wn > 0.0)) continue;
      const double fd = lj.logits[c] - lj.logits[k0];
      const double dist = std::abs(fd) / wn;
      if (dist < best) {
        best = dist;
        step = (std::abs(fd) / (wn * wn)) * w;
      }
    }
    if (step.size() == 0) {
      if (it == 0) tr.degenerate = true;
      break;
    }
    tr.total += step;
    ++tr.iterations;
    x = x0 + spec.overshoot * tr.total;
    if (model.predict(x) != k0) break;
  }
  return tr;
}

std::vector<AttackResult> deepfool_sweep(const Classifier& model, const Eigen::VectorXd& x0,
                                         int label, const AttackSpec& spec,
                                         const std::vector<double>& epsilons) {
  const DeepFoolTrajectory tr = deepfool_trajectory(model, x0, label, spec);
  const Eigen::VectorXd eta = spec.overshoot * tr.total;
  const double norm = eta.norm();
  std::vector<AttackResult> out(epsilons.size());
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    AttackResult& r = out[k];
    r.raw_perturbation = tr.total;
    r.iterations = tr.iterations;
    r.gradient_evaluations = k == 0 ? tr.gradient_evaluations : 0;
    r.degenerate = tr.degenerate;
    if (epsilons[k] == 0.0 || tr.degenerate || norm == 0.0) {
      r.adversarial = x0;
      continue;
    }
    const double scale = std::min(1.0, epsilons[k] / norm);
    r.adversarial = clip(x0 + scale * eta, model.input_bounds());
  }
  return out;
}

}  // namespace

std::string family_name(AttackFamily family) {
  switch (family) {
    case AttackFamily::kFgsm:
      return "fgsm";
    case AttackFamily::kPgd:
      return "pgd";
    case AttackFamily::kDeepFool:
      return "deepfool";
  }
  return "unknown";
}

AttackFamily parse_family(const std::string& name) {
  if (name == "fgsm") return AttackFamily::kFgsm;
  if (name == "pgd") return AttackFamily::kPgd;
  if (name == "deepfool") return AttackFamily::kDeepFool;
  throw ConfigError("unknown attack family '" + name + "'");
}

void AttackSpec::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be >= 0");
  if (steps < 1) throw ConfigError("attack steps must be >= 1");
  if (!(step_size > 0.0)) throw ConfigError("attack step size must be > 0");
  if (!(overshoot >= 1.0)) throw ConfigError("DeepFool overshoot must be >= 1");
}

std::vector<AttackResult> attack_sweep(const Classifier& model, const Eigen::VectorXd& x,
                                       int label, const AttackSpec& spec,
                                       const std::vector<double>& epsilons) {
  spec.validate();
  check_input(model, x);
  check_budgets(epsilons);
  if (label >= model.num_classes()) throw ConfigError("label out of range");
  if (label < 0 && spec.family != AttackFamily::kDeepFool) {
    throw ConfigError("FGSM and PGD need a label");
  }
  switch (spec.family) {
    case AttackFamily::kFgsm:
      return fgsm_sweep(model, x, label, epsilons);
    case AttackFamily::kPgd:
      return pgd_sweep(model, x, label, spec, epsilons);
    case AttackFamily::kDeepFool:
      return deepfool_sweep(model, x, label, spec, epsilons);
  }
  throw ConfigError("unknown attack family");
}

AttackResult run_attack(const Classifier& model, const Eigen::VectorXd& x, int label,
                        const AttackSpec& spec) {
  return attack_sweep(model, x, label, spec, {spec.epsilon}).front();
}

AttackResult fgsm(const Classifier& model, const Eigen::VectorXd& x, int label,
                  const AttackSpec& spec) {
  AttackSpec s = spec;
  s.family = AttackFamily::kFgsm;
  return run_attack(model, x, label, s);
}

AttackResult pgd(const Classifier& model, const Eigen::VectorXd& x, int label,
                 const AttackSpec& spec) {
  AttackSpec s = spec;
  s.family = AttackFamily::kPgd;
  return run_attack(model, x, label, s);
}

AttackResult deepfool(const Classifier& model, const Eigen::VectorXd& x, int label,
                      const AttackSpec& spec) {
  AttackSpec s = spec;
  s.family = AttackFamily::kDeepFool;
  return run_attack(model, x, label, s);
}

double perturbation_norm(AttackFamily family, const Eigen::VectorXd& adversarial,
                         const Eigen::VectorXd& x) {
  const Eigen::VectorXd d = adversarial - x;
  if (d.size() == 0) return 0.0;
  return family == AttackFamily::kDeepFool ? d.norm() : d.cwiseAbs().maxCoeff();
}

}  // namespace qrc::attacks
