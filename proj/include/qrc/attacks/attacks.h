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
#include <cstdint>
#include <string>
#include <vector>

#include "qrc/attacks/models.h"

namespace qrc::attacks {

enum class AttackFamily { kFgsm, kPgd, kDeepFool };

std::string family_name(AttackFamily family);
/// "fgsm", "pgd" or "deepfool"; throws ConfigError otherwise.
AttackFamily parse_family(const std::string& name);

struct AttackSpec {
  AttackFamily family = AttackFamily::kFgsm;
  /// l-infinity budget for FGSM/PGD, l2 budget for DeepFool.
  double epsilon = 0.0;
  /// PGD iterations; DeepFool iteration cap.
  int steps = 100;
  /// PGD step size.
  double step_size = 1e-3;
  /// PGD: start from a uniform point of the budget ball.
  bool random_start = false;
  /// DeepFool: multiplier on the accumulated perturbation.
  double overshoot = 1.02;
  std::uint64_t seed = 0;

  void validate() const;
};

struct AttackResult {
  Eigen::VectorXd adversarial;
  /// DeepFool: accumulated boundary steps before overshoot and rescaling.
  Eigen::VectorXd raw_perturbation;
  int iterations = 0;
  int gradient_evaluations = 0;
  /// DeepFool: every class direction had a zero gradient difference.
  bool degenerate = false;
};

/// clip(x + eps sign(grad L)), sign(0) = 0.
AttackResult fgsm(const Classifier& model, const Eigen::VectorXd& x, int label,
                  const AttackSpec& spec);

/// `steps` iterations of x <- Proj(x + step_size sign(grad L)), the projection
/// clamping every coordinate to [x0 - eps, x0 + eps] intersected with the
/// input bounds.
AttackResult pgd(const Classifier& model, const Eigen::VectorXd& x, int label,
                 const AttackSpec& spec);

/// Multiclass DeepFool. Each step moves to the nearest linearised boundary
/// between the original prediction k and another class; the iterate is
/// x0 + overshoot * r_total and the loop stops once the prediction changes.
/// The final perturbation is min(1, eps / |eta|) eta with eta = overshoot *
/// r_total, clipped to the input bounds last. With label >= 0, an input the
/// model already misclassifies is returned unchanged. When no class offers a
/// direction at the first iterate, the input is returned with `degenerate`.
AttackResult deepfool(const Classifier& model, const Eigen::VectorXd& x, int label,
                      const AttackSpec& spec);

AttackResult run_attack(const Classifier& model, const Eigen::VectorXd& x, int label,
                        const AttackSpec& spec);

/// run_attack for every epsilon, bitwise identical to separate calls. FGSM
/// reuses one gradient, DeepFool one trajectory, and PGD evaluates each
/// distinct iterate once across budgets and stops a budget early once its
/// iterates reach a fixed point or a 2-cycle. Shared gradients are counted
/// once, on the first budget that used them.
std::vector<AttackResult> attack_sweep(const Classifier& model, const Eigen::VectorXd& x,
                                       int label, const AttackSpec& spec,
                                       const std::vector<double>& epsilons);

/// l-infinity norm for FGSM/PGD, l2 for DeepFool.
double perturbation_norm(AttackFamily family, const Eigen::VectorXd& adversarial,
                         const Eigen::VectorXd& x);

}  // namespace qrc::attacks
