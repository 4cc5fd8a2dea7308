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

#include "qrc/encoding/pca.h"

#include <cmath>
#include <sstream>

#include "qrc/error.h"
#include "qrc/log.h"

namespace qrc::encoding {

Eigen::VectorXd PcaModel::project(const Eigen::VectorXd& patch) const {
  if (patch.size() != mean.size()) {
    throw ConfigError("PCA projection: patch length " + std::to_string(patch.size()) +
                      ", expected " + std::to_string(mean.size()));
  }
  return components.transpose() * (patch - mean);
}

Eigen::VectorXd PcaModel::reconstruct(const Eigen::VectorXd& features) const {
  if (features.size() != components.cols()) {
    throw ConfigError("PCA reconstruction: feature length mismatch");
  }
  return mean + components * features;
}

double PcaModel::retained_variance() const {
  const double total = eigenvalues.sum();
  return total > 0.0 ? eigenvalues.head(retained_dim).sum() / total : 0.0;
}

PcaModel fit_pca(const Eigen::MatrixXd& patches, const PcaSelection& selection) {
  const Eigen::Index n = patches.rows();
  const Eigen::Index dim = patches.cols();
  if (dim == 0) throw ConfigError("fit_pca: empty patches");
  if (selection.retained_dim > dim) {
    throw ConfigError("fit_pca: retained_dim " + std::to_string(selection.retained_dim) +
                      " exceeds the patch dimension " + std::to_string(dim));
  }
  if (selection.retained_dim <= 0 &&
      !(selection.variance_threshold > 0.0 && selection.variance_threshold < 1.0)) {
    throw ConfigError("fit_pca: variance_threshold must lie in (0, 1)");
  }
  const Eigen::Index need = std::max(1, selection.retained_dim) + 1;
  if (n < need) {
    throw ConfigError("fit_pca: " + std::to_string(n) + " patches, need at least " +
                      std::to_string(need));
  }

  PcaModel model;
  model.mean = patches.colwise().mean().transpose();
  const Eigen::MatrixXd centered = patches.rowwise() - model.mean.transpose();
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw NumericalError("fit_pca: eigensolver failed");
  // Ascending -> descending; round-off negatives become 0.
  model.eigenvalues = solver.eigenvalues().reverse().cwiseMax(0.0);
  const Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  const double top = model.eigenvalues[0];
  if (!(top > 0.0)) throw NumericalError("fit_pca: covariance is zero");
  const double tol = top * static_cast<double>(dim) * 1e-13;
  int rank = 0;
  while (rank < dim && model.eigenvalues[rank] > tol) ++rank;

  int delta = selection.retained_dim;
  if (delta <= 0) {
    model.variance_threshold = selection.variance_threshold;
    const double total = model.eigenvalues.sum();
    double acc = 0.0;
    delta = 0;
    while (delta < dim && acc / total <= selection.variance_threshold) acc += model.eigenvalues[delta++];
  }
  if (rank < delta) {
    std::ostringstream msg;
    msg << "covariance rank " << rank << " is below the requested " << delta
        << " components; keeping " << rank;
    log_warning(msg.str());
    delta = rank;
  }
  model.retained_dim = delta;
  model.components = vectors.leftCols(delta);
  for (int k = 0; k < delta; ++k) {
    Eigen::Index arg = 0;
    model.components.col(k).cwiseAbs().maxCoeff(&arg);
    if (model.components(arg, k) < 0.0) model.components.col(k) *= -1.0;
  }
  return model;
}

}  // namespace qrc::encoding
