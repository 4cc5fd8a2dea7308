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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qrc::harness {

/// Accuracy of one model under one attack family over the epsilon grid.
struct AccuracyCurve {
  std::string model;
  std::string attack;
  int eval_size = 0;
  std::vector<double> accuracy;  // one value per grid point
  bool operator==(const AccuracyCurve&) const = default;
};

/// Results of one sweep point (one atom count N).
struct SweepPoint {
  int n_atoms = 0;
  int retained_dim = 0;
  int embedding_dim = 0;
  std::map<std::string, double> clean_accuracy;  // per model, whole test split
  std::map<std::string, double> train_accuracy;  // per model
  std::vector<AccuracyCurve> curves;
  /// Mean over the grid of accuracy(qrc_mlp) - accuracy(mlp), per attack.
  std::map<std::string, double> delta_acc;
  /// Deterministic work counters.
  std::map<std::string, long long> counters;
  bool operator==(const SweepPoint&) const = default;
};

struct RobustnessReport {
  std::string dataset;
  std::string config_hash;
  std::map<std::string, std::string> config;  // canonical echo
  std::map<std::string, std::string> dataset_sha256;
  std::vector<double> epsilons;
  std::vector<SweepPoint> points;

  bool operator==(const RobustnessReport&) const = default;
};

/// Mean of a[i] - b[i]; throws ConfigError on a length mismatch or empty input.
double mean_difference(const std::vector<double>& a, const std::vector<double>& b);

/// Fills delta_acc of every point from its qrc_mlp and mlp curves.
void compute_delta_acc(RobustnessReport& report);

/// JSON with every number printed with 17 significant digits.
std::string report_to_json(const RobustnessReport& report);
/// Throws DataError(kFormat).
RobustnessReport report_from_json(const std::string& text);

/// Header "dataset,model,attack,N,epsilon,accuracy" and one row per curve
/// point.
std::string report_to_csv(const RobustnessReport& report);

void write_report(const RobustnessReport& report, const std::filesystem::path& json_path,
                  const std::filesystem::path& csv_path);

}  // namespace qrc::harness
