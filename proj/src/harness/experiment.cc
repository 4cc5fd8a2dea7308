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

#include "qrc/harness/experiment.h"

#include <chrono>
#include <cstring>
#include <json.hpp>
#include <sstream>

#include "qrc/encoding/matrix_container.h"
#include "qrc/error.h"
#include "qrc/harness/sha256.h"
#include "qrc/log.h"
#include "qrc/parallel.h"
#include "qrc/readout/checkpoint.h"
#include "qrc/rng.h"

namespace qrc::harness {
namespace {

Eigen::MatrixXd stack(const std::vector<Eigen::VectorXd>& rows, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(i) = rows[i].transpose();
  return m;
}

bool same_bits(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fixed(double v, int digits = 1) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

}  // namespace

void with_stage(const std::string& stage, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DataError& e) {
    throw DataError(e.kind(), stage + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(stage + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(stage + ": " + e.what());
  }
}

std::string PreparedData::combined_digest() const {
  std::string text;
  for (const auto& [k, v] : digests) text += k + "=" + v + "\n";
  return sha256_hex(text);
}

PreparedData prepare_data(const ExperimentConfig& config) {
  if (config.train_images.empty() || config.train_labels.empty()) {
    throw ConfigError("train_images and train_labels must be set");
  }
  PreparedData out;
  out.digests["images"] = sha256_file(config.train_images);
  out.digests["labels"] = sha256_file(config.train_labels);
  auto verify = [](const std::string& expected, const std::string& got, const std::string& what) {
    if (!expected.empty() && expected != got) {
      throw DataError(DataError::Kind::kChecksum,
                      what + " SHA-256 is " + got + ", config expects " + expected);
    }
  };
  verify(config.images_sha256, out.digests["images"], "image file");
  verify(config.labels_sha256, out.digests["labels"], "label file");
  const LabeledImages all = load_idx(config.train_images, config.train_labels);
  DatasetSpec spec;
  spec.name = config.dataset;
  spec.per_class = config.per_class;
  spec.train_fraction = config.train_fraction;
  spec.seed = derive_seed(config.master_seed, kSubsetStream);
  out.split = balanced_subset(all, spec);
  out.num_classes = all.num_classes();
  return out;
}

SweepStage::SweepStage(const ExperimentConfig& config, const PreparedData& data, int n_atoms,
                       const EmbeddingCache& cache)
    : config_(config), data_(data), n_atoms_(n_atoms), cache_(cache) {
  encoding::PipelineConfig pc = config.pipeline_for(n_atoms);
  pc.image_size = data.split.train.side;
  pipeline_ = std::make_unique<encoding::EncodingPipeline>(
      encoding::EncodingPipeline::fit(data.split.train.images, pc));
}

const FeatureSet& SweepStage::features(const std::string& model) {
  const std::string kind = attacks_embeddings(model) || model == kQrcModel ? kQrcModel : model;
  auto it = features_.find(kind);
  if (it != features_.end()) return it->second;
  FeatureSet fs;
  const auto& train = data_.split.train.images;
  const auto& test = data_.split.test.images;
  if (kind == kQrcModel) {
    const std::string digest = data_.combined_digest();
    auto embed = [&](const std::vector<Eigen::VectorXd>& images, const std::string& split) {
      const std::string key = embedding_cache_key(config_, n_atoms_, digest, split);
      if (auto hit = cache_.load(key)) {
        if (hit->rows() == static_cast<Eigen::Index>(images.size()) &&
            hit->cols() == pipeline_->embedding_dim()) {
          log_info("embeddings " + split + " N=" + std::to_string(n_atoms_) + " from cache");
          return *hit;
        }
        log_warning("cache entry " + key + " has the wrong shape; recomputing");
      }
      Stopwatch sw;
      Eigen::MatrixXd m = pipeline_->embed_batch(images);
      log_info("embedded " + std::to_string(images.size()) + " " + split + " images at N=" +
               std::to_string(n_atoms_) + " in " + fixed(sw.seconds()) + " s");
      cache_.store(key, m);
      return m;
    };
    fs.train = embed(train, "train");
    fs.test = embed(test, "test");
  } else if (kind == kMlpModel) {
    fs.train = pipeline_->classical_batch(train);
    fs.test = pipeline_->classical_batch(test);
  } else if (kind == kPixelModel) {
    const Eigen::Index s2 = static_cast<Eigen::Index>(pipeline_->config().downsample_size) *
                            pipeline_->config().downsample_size;
    std::vector<Eigen::VectorXd> tr, te;
    for (const auto& x : train) tr.push_back(pipeline_->downsampled(x));
    for (const auto& x : test) te.push_back(pipeline_->downsampled(x));
    fs.train = stack(tr, s2);
    fs.test = stack(te, s2);
  } else {
    throw ConfigError("unknown model '" + model + "'");
  }
  return features_.emplace(kind, std::move(fs)).first->second;
}

readout::TrainResult train_readout(const ExperimentConfig& config, const Eigen::MatrixXd& inputs,
                                   const std::vector<int>& labels, int num_classes) {
  std::vector<int> sizes{static_cast<int>(inputs.cols())};
  sizes.insert(sizes.end(), config.hidden_layers.begin(), config.hidden_layers.end());
  sizes.push_back(num_classes);
  const readout::MlpParams init = readout::MlpParams::he_uniform(
      sizes, derive_seed(config.master_seed, kInitStream), config.dropout);
  readout::TrainConfig tc = config.train;
  tc.seed = derive_seed(config.master_seed, kTrainStream);
  return readout::train(init, inputs, labels, tc);
}

bool attacks_embeddings(const std::string& model) { return model == kQrcEmbeddingModel; }

std::unique_ptr<attacks::Classifier> make_classifier(const encoding::EncodingPipeline& pipeline,
                                                     const readout::MlpParams& params,
                                                     const std::string& model) {
  if (model == kQrcModel) {
    return std::make_unique<attacks::PipelineClassifier>(pipeline, params, attacks::FeatureKind::kReservoir);
  }
  if (model == kMlpModel) {
    return std::make_unique<attacks::PipelineClassifier>(pipeline, params, attacks::FeatureKind::kClassical);
  }
  if (model == kPixelModel) {
    return std::make_unique<attacks::PipelineClassifier>(pipeline, params, attacks::FeatureKind::kPixels);
  }
  if (model == kQrcEmbeddingModel) {
    return std::make_unique<attacks::MlpClassifier>(params, std::make_pair(-1.0, 1.0));
  }
  throw ConfigError("unknown model '" + model + "'");
}

std::vector<int> predict_rows(const readout::MlpParams& params, const Eigen::MatrixXd& inputs) {
  std::vector<int> out(inputs.rows());
  for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
    out[i] = readout::argmax(readout::forward(params, inputs.row(i).transpose()));
  }
  return out;
}

CurveOutput evaluate_curve(const ExperimentConfig& config, const attacks::Classifier& model,
                           const std::string& model_name, attacks::AttackFamily family,
                           const Eigen::MatrixXd& inputs, const std::vector<int>& labels,
                           const std::vector<int>& clean_prediction, bool keep_adversarial) {
  const std::vector<double> grid = config.epsilon_grid();
  CurveOutput out;
  out.curve.model = model_name;
  out.curve.attack = attacks::family_name(family);
  out.sample_index = stratified_prefix(labels, config.eval_per_class(family));
  out.curve.eval_size = static_cast<int>(out.sample_index.size());

  attacks::AttackSpec spec;
  spec.family = family;
  spec.steps = config.attack_steps;
  spec.step_size = config.attack_step_size;
  spec.overshoot = config.deepfool_overshoot;
  spec.random_start = config.pgd_random_start;
  const std::uint64_t attack_seed = derive_seed(config.master_seed, kAttackStream);

  struct SampleResult {
    std::vector<int> correct;  // per grid point
    std::vector<Eigen::VectorXd> adversarial;
    long long gradients = 0;
  };
  const auto results = parallel_map<SampleResult>(out.sample_index.size(), [&](std::size_t k) {
    const std::size_t i = out.sample_index[k];
    const Eigen::VectorXd x = inputs.row(i).transpose();
    attacks::AttackSpec s = spec;
    s.seed = mix_seed(attack_seed, i);
    const auto adv = attacks::attack_sweep(model, x, labels[i], s, grid);
    SampleResult r;
    for (const auto& a : adv) {
      const int pred = same_bits(a.adversarial, x) ? clean_prediction[i] : model.predict(a.adversarial);
      r.correct.push_back(pred == labels[i] ? 1 : 0);
      r.gradients += a.gradient_evaluations;
      if (keep_adversarial) r.adversarial.push_back(a.adversarial);
    }
    return r;
  });

  out.curve.accuracy.assign(grid.size(), 0.0);
  for (const auto& r : results) {
    for (std::size_t e = 0; e < grid.size(); ++e) out.curve.accuracy[e] += r.correct[e];
    out.gradient_evaluations += r.gradients;
  }
  for (double& a : out.curve.accuracy) a = out.sample_index.empty() ? 0.0 : a / out.sample_index.size();
  if (keep_adversarial) {
    for (std::size_t e = 0; e < grid.size(); ++e) {
      Eigen::MatrixXd m(static_cast<Eigen::Index>(results.size()), inputs.cols());
      for (std::size_t k = 0; k < results.size(); ++k) m.row(k) = results[k].adversarial[e].transpose();
      out.adversarial.push_back(std::move(m));
    }
  }
  return out;
}

void write_adversarial_set(const std::filesystem::path& path, const Eigen::MatrixXd& samples,
                           const std::string& family, double epsilon, std::uint64_t seed,
                           const std::string& model_hash) {
  encoding::write_matrix_file(path, encoding::kAdversarialMagic, samples);
  nlohmann::ordered_json side;
  side["attack"] = family;
  side["epsilon"] = format_double(epsilon);
  side["seed"] = seed;
  side["model_hash"] = model_hash;
  side["rows"] = samples.rows();
  side["cols"] = samples.cols();
  std::filesystem::path sidecar = path;
  sidecar += ".json";
  encoding::write_file_bytes(sidecar, side.dump(2) + "\n");
}

std::string model_hash(const readout::MlpParams& params, const readout::TrainConfig& train) {
  return sha256_hex(readout::encode_checkpoint({params, train}));
}

RobustnessReport run_experiment(const ExperimentConfig& config, const PreparedData& data,
                                const RunOptions& options) {
  config.validate();
  RobustnessReport report;
  report.dataset = config.dataset;
  report.config_hash = config.hash();
  for (const auto& [k, v] : config.canonical()) {
    if (!is_location_key(k)) report.config[k] = v;
  }
  report.dataset_sha256 = data.digests;
  report.epsilons = config.epsilon_grid();
  const EmbeddingCache cache(config.cache_dir, config.use_cache);
  const auto attack_points = config.attack_points();
  readout::TrainConfig tc = config.train;
  tc.seed = derive_seed(config.master_seed, kTrainStream);

  for (int n : config.n_sweep) {
    const std::string at = " at N=" + std::to_string(n);
    std::unique_ptr<SweepStage> stage;
    with_stage("fit pipeline" + at,
               [&] { stage = std::make_unique<SweepStage>(config, data, n, cache); });
    SweepPoint point;
    point.n_atoms = n;
    point.retained_dim = stage->pipeline().retained_dim();
    point.embedding_dim = stage->pipeline().embedding_dim();

    std::map<std::string, readout::MlpParams> trained;
    for (const std::string& model : config.models) {
      if (attacks_embeddings(model)) continue;
      with_stage("train " + model + at, [&] {
        const FeatureSet& fs = stage->features(model);
        Stopwatch sw;
        readout::TrainResult r = train_readout(config, fs.train, data.split.train.labels, data.num_classes);
        point.train_accuracy[model] = readout::accuracy(r.params, fs.train, data.split.train.labels);
        trained[model] = std::move(r.params);
        log_info("trained " + model + at + " in " + fixed(sw.seconds()) + " s");
      });
    }
    if (config.has_model(kQrcEmbeddingModel) && !trained.count(kQrcModel)) {
      with_stage("train " + std::string(kQrcModel) + at, [&] {
        const FeatureSet& fs = stage->features(kQrcModel);
        trained[kQrcModel] =
            train_readout(config, fs.train, data.split.train.labels, data.num_classes).params;
      });
    }

    std::map<std::string, std::vector<int>> clean;
    for (const std::string& model : config.models) {
      const std::string base = attacks_embeddings(model) ? kQrcModel : model;
      const FeatureSet& fs = stage->features(base);
      clean[model] = predict_rows(trained[base], fs.test);
      int hits = 0;
      for (std::size_t i = 0; i < clean[model].size(); ++i) {
        hits += clean[model][i] == data.split.test.labels[i];
      }
      point.clean_accuracy[model] =
          clean[model].empty() ? 0.0 : static_cast<double>(hits) / clean[model].size();
      if (attacks_embeddings(model)) point.train_accuracy[model] = point.train_accuracy[base];
      log_info(model + at + " clean accuracy " + fixed(100.0 * point.clean_accuracy[model], 2) + "%");
    }

    const bool attack_here =
        std::find(attack_points.begin(), attack_points.end(), n) != attack_points.end();
    if (attack_here) {
      for (attacks::AttackFamily family : config.attacks) {
        for (const std::string& model : config.models) {
          const std::string name = attacks::family_name(family);
          with_stage("attack " + name + " on " + model + at, [&] {
            const std::string base = attacks_embeddings(model) ? kQrcModel : model;
            const auto classifier = make_classifier(stage->pipeline(), trained[base], model);
            const Eigen::MatrixXd inputs =
                attacks_embeddings(model) ? stage->features(kQrcModel).test
                                          : stack(data.split.test.images, stage->pipeline().input_dim());
            Stopwatch sw;
            CurveOutput c = evaluate_curve(config, *classifier, model, family, inputs,
                                           data.split.test.labels, clean[model], config.dump_adversarial);
            point.counters["gradients." + model + "." + name] = c.gradient_evaluations;
            log_info(name + " on " + model + at + ": " + std::to_string(c.curve.eval_size) +
                     " samples in " + fixed(sw.seconds()) + " s, accuracy at max budget " +
                     fixed(100.0 * c.curve.accuracy.back(), 2) + "%");
            if (config.dump_adversarial && !options.output_dir.empty()) {
              const std::string hash = model_hash(trained[base], tc);
              const auto grid = config.epsilon_grid();
              for (std::size_t e = 0; e < grid.size(); ++e) {
                write_adversarial_set(options.output_dir / ("adv-" + model + "-" + name + "-N" +
                                                            std::to_string(n) + "-e" + std::to_string(e) +
                                                            ".qrcadv"),
                                      c.adversarial[e], name, grid[e], derive_seed(config.master_seed, kAttackStream),
                                      hash);
              }
            }
            point.curves.push_back(std::move(c.curve));
          });
        }
      }
    }
    report.points.push_back(std::move(point));
    compute_delta_acc(report);
    if (options.on_progress) options.on_progress(report);
  }
  return report;
}

}  // namespace qrc::harness
