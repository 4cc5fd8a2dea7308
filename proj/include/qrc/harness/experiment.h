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
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qrc/attacks/attacks.h"
#include "qrc/attacks/models.h"
#include "qrc/encoding/pipeline.h"
#include "qrc/harness/cache.h"
#include "qrc/harness/config.h"
#include "qrc/harness/dataset.h"
#include "qrc/harness/report.h"
#include "qrc/readout/mlp.h"

namespace qrc::harness {

/// Seed streams derived from the master seed.
enum SeedStream : std::uint64_t {
  kSubsetStream = 1,
  kInitStream = 2,
  kTrainStream = 3,
  kAttackStream = 4,
};

struct PreparedData {
  Split split;
  /// "images" and "labels" digests of the raw files.
  std::map<std::string, std::string> digests;
  int num_classes = 0;

  /// Digest over both files, used in cache keys.
  std::string combined_digest() const;
};

/// Loads the IDX files, checks configured digests (DataError(kChecksum) on a
/// mismatch) and draws the balanced subset.
PreparedData prepare_data(const ExperimentConfig& config);

/// Train and test inputs of one model, one sample per row.
struct FeatureSet {
  Eigen::MatrixXd train;
  Eigen::MatrixXd test;
};

/// Fitted pipeline and feature matrices for one sweep point.
class SweepStage {
 public:
  SweepStage(const ExperimentConfig& config, const PreparedData& data, int n_atoms,
             const EmbeddingCache& cache);

  int n_atoms() const { return n_atoms_; }
  const encoding::EncodingPipeline& pipeline() const { return *pipeline_; }

  /// Inputs of a model: reservoir embeddings (qrc models), classical
  /// features (mlp) or downsampled pixels (mlp_pixels). Reservoir embeddings
  /// come from the cache when possible.
  const FeatureSet& features(const std::string& model);

 private:
  const ExperimentConfig& config_;
  const PreparedData& data_;
  int n_atoms_;
  const EmbeddingCache& cache_;
  std::unique_ptr<encoding::EncodingPipeline> pipeline_;
  std::map<std::string, FeatureSet> features_;
};

/// Trains a readout on the given inputs with the experiment's seeds.
readout::TrainResult train_readout(const ExperimentConfig& config, const Eigen::MatrixXd& inputs,
                                   const std::vector<int>& labels, int num_classes);

/// Attackable classifier for a model name. Pixel-space models need the
/// pipeline to outlive the result.
std::unique_ptr<attacks::Classifier> make_classifier(const encoding::EncodingPipeline& pipeline,
                                                     const readout::MlpParams& params,
                                                     const std::string& model);

/// Whether the model is attacked in reservoir-embedding space.
bool attacks_embeddings(const std::string& model);

struct CurveOutput {
  AccuracyCurve curve;
  long long gradient_evaluations = 0;
  /// adversarial[e] holds one row per evaluated sample (only when requested).
  std::vector<Eigen::MatrixXd> adversarial;
  std::vector<std::size_t> sample_index;  // test-split indices evaluated
};

/// Accuracy under one attack family over the grid. `inputs` are the clean
/// inputs the classifier sees (pixels or embeddings), one per row, and
/// `clean_prediction` the model's prediction on each of them.
CurveOutput evaluate_curve(const ExperimentConfig& config, const attacks::Classifier& model,
                           const std::string& model_name, attacks::AttackFamily family,
                           const Eigen::MatrixXd& inputs, const std::vector<int>& labels,
                           const std::vector<int>& clean_prediction, bool keep_adversarial);

/// Eval-mode predictions of an MLP on rows of `inputs`.
std::vector<int> predict_rows(const readout::MlpParams& params, const Eigen::MatrixXd& inputs);

/// Writes an adversarial set (QRCADV1) and its JSON sidecar.
void write_adversarial_set(const std::filesystem::path& path, const Eigen::MatrixXd& samples,
                           const std::string& family, double epsilon, std::uint64_t seed,
                           const std::string& model_hash);

/// SHA-256 of a model's checkpoint bytes.
std::string model_hash(const readout::MlpParams& params, const readout::TrainConfig& train);

struct RunOptions {
  /// Receives the report after every completed sweep point.
  std::function<void(const RobustnessReport&)> on_progress;
  /// Adversarial sets are written here when config.dump_adversarial is set.
  std::filesystem::path output_dir;
};

/// Full experiment: for every N of the sweep fit the pipeline, train every
/// configured model with identical seeds, evaluate clean accuracy and every
/// attack on the grid, and compute the mean accuracy gain of qrc_mlp over
/// mlp. Errors are rethrown with the failing stage prepended.
RobustnessReport run_experiment(const ExperimentConfig& config, const PreparedData& data,
                                const RunOptions& options = {});

/// Runs fn; on a library error rethrows the same error type with "stage:"
/// prepended to the message.
void with_stage(const std::string& stage, const std::function<void()>& fn);

}  // namespace qrc::harness
