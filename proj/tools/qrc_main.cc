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

// Command-line front end: embed, train, attack, report, sweep.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "qrc/encoding/matrix_container.h"
#include "qrc/error.h"
#include "qrc/harness/experiment.h"
#include "qrc/log.h"
#include "qrc/readout/checkpoint.h"
#include "qrc/rng.h"

namespace {

namespace fs = std::filesystem;
using namespace qrc;
using namespace qrc::harness;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c, bool need_config = true) {
  auto* opt = cmd->add_option("-c,--config", c.config_path, "experiment config file");
  if (need_config) opt->required();
  cmd->add_option("--set", c.overrides, "override a config key (key=value), repeatable");
  cmd->add_flag("-q,--quiet", c.quiet, "only log warnings and errors");
}

ExperimentConfig load(const Common& c) {
  if (c.quiet) set_log_threshold(LogLevel::kWarning);
  ExperimentConfig config = load_config(c.config_path);
  for (const std::string& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  config.validate();
  return config;
}

int pick_n(const ExperimentConfig& config, int requested) {
  if (requested > 0) return requested;
  return config.n_sweep.back();
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * v);
  return buf;
}

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int cmd_embed(const Common& common, int n_req, const std::string& out_dir) {
  const ExperimentConfig config = load(common);
  const PreparedData data = prepare_data(config);
  const EmbeddingCache cache(config.cache_dir, config.use_cache);
  const fs::path out = out_dir.empty() ? cache.dir() : fs::path(out_dir);
  std::vector<int> points = n_req > 0 ? std::vector<int>{n_req} : config.n_sweep;
  for (int n : points) {
    SweepStage stage(config, data, n, cache);
    const FeatureSet& fs = stage.features(kQrcModel);
    const std::string tag = "N" + std::to_string(n);
    encoding::write_matrix_file(out / ("pca-" + tag + ".qrcpca"), encoding::kPcaMagic,
                                encoding::pca_to_matrix(stage.pipeline().pca()));
    encoding::write_matrix_file(out / ("embeddings-" + tag + "-train.qrcemb"), encoding::kEmbeddingMagic, fs.train);
    encoding::write_matrix_file(out / ("embeddings-" + tag + "-test.qrcemb"), encoding::kEmbeddingMagic, fs.test);
    std::cout << "N=" << n << ": " << fs.train.rows() << " train and " << fs.test.rows()
              << " test embeddings of length " << fs.train.cols() << " written to " << out.string() << "\n";
  }
  return 0;
}

int cmd_train(const Common& common, int n_req, const std::string& model, const std::string& out) {
  const ExperimentConfig config = load(common);
  if (model == kQrcEmbeddingModel) throw ConfigError("train qrc_mlp; qrc_mlp_embedding shares its readout");
  const PreparedData data = prepare_data(config);
  const EmbeddingCache cache(config.cache_dir, config.use_cache);
  const int n = pick_n(config, n_req);
  SweepStage stage(config, data, n, cache);
  const FeatureSet& fs = stage.features(model);
  const readout::TrainResult r = train_readout(config, fs.train, data.split.train.labels, data.num_classes);
  readout::TrainConfig tc = config.train;
  tc.seed = derive_seed(config.master_seed, kTrainStream);
  readout::save_checkpoint(out, {r.params, tc});
  std::cout << model << " N=" << n << ": train accuracy "
            << percent(readout::accuracy(r.params, fs.train, data.split.train.labels)) << ", test accuracy "
            << percent(readout::accuracy(r.params, fs.test, data.split.test.labels)) << ", checkpoint "
            << out << "\n";
  return 0;
}

int cmd_attack(const Common& common, int n_req, const std::string& model, const std::string& ckpt,
               const std::vector<std::string>& families, const std::string& out_dir) {
  const ExperimentConfig config = load(common);
  const PreparedData data = prepare_data(config);
  const EmbeddingCache cache(config.cache_dir, config.use_cache);
  const int n = pick_n(config, n_req);
  SweepStage stage(config, data, n, cache);
  const readout::Checkpoint cp = readout::load_checkpoint(ckpt);
  const std::string base = attacks_embeddings(model) ? kQrcModel : model;
  const FeatureSet& fs = stage.features(base);
  if (cp.params.input_dim() != fs.test.cols()) {
    throw ConfigError("checkpoint input size " + std::to_string(cp.params.input_dim()) + " does not match " +
                      model + " features (" + std::to_string(fs.test.cols()) + ")");
  }
  const auto classifier = make_classifier(stage.pipeline(), cp.params, model);
  const std::vector<int> clean = predict_rows(cp.params, fs.test);
  Eigen::MatrixXd inputs = fs.test;
  if (!attacks_embeddings(model)) {
    inputs.resize(static_cast<Eigen::Index>(data.split.test.size()), stage.pipeline().input_dim());
    for (std::size_t i = 0; i < data.split.test.size(); ++i) inputs.row(i) = data.split.test.images[i].transpose();
  }
  const fs::path out(out_dir);
  const std::string hash = model_hash(cp.params, cp.train_config);

  RobustnessReport report;
  report.dataset = config.dataset;
  report.config_hash = config.hash();
  for (const auto& [k, v] : config.canonical()) {
    if (!is_location_key(k)) report.config[k] = v;
  }
  report.dataset_sha256 = data.digests;
  report.epsilons = config.epsilon_grid();
  SweepPoint point;
  point.n_atoms = n;
  point.retained_dim = stage.pipeline().retained_dim();
  point.embedding_dim = stage.pipeline().embedding_dim();
  int hits = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) hits += clean[i] == data.split.test.labels[i];
  point.clean_accuracy[model] = clean.empty() ? 0.0 : static_cast<double>(hits) / clean.size();

  for (const std::string& name : families) {
    const attacks::AttackFamily family = attacks::parse_family(name);
    CurveOutput c = evaluate_curve(config, *classifier, model, family, inputs, data.split.test.labels, clean, true);
    for (std::size_t e = 0; e < report.epsilons.size(); ++e) {
      const fs::path p = out / ("adv-" + model + "-" + name + "-N" + std::to_string(n) + "-e" +
                                std::to_string(e) + ".qrcadv");
      write_adversarial_set(p, c.adversarial[e], name, report.epsilons[e],
                            derive_seed(config.master_seed, kAttackStream), hash);
    }
    point.counters["gradients." + model + "." + name] = c.gradient_evaluations;
    std::cout << name << " on " << model << " N=" << n << " (" << c.curve.eval_size << " samples):";
    for (std::size_t e = 0; e < c.curve.accuracy.size(); ++e) {
      std::cout << " " << short_double(report.epsilons[e]) << ":" << percent(c.curve.accuracy[e]);
    }
    std::cout << "\n";
    point.curves.push_back(std::move(c.curve));
  }
  report.points.push_back(std::move(point));
  compute_delta_acc(report);
  write_report(report, out / "curves.json", out / "curves.csv");
  std::cout << "adversarial sets and curves written to " << out.string() << "\n";
  return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& json_out,
               const std::string& csv_out) {
  RobustnessReport merged;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    RobustnessReport r = report_from_json(encoding::read_file_bytes(inputs[i]));
    if (i == 0) {
      merged = std::move(r);
      continue;
    }
    if (r.epsilons != merged.epsilons || r.dataset != merged.dataset) {
      throw DataError(DataError::Kind::kFormat, inputs[i] + " uses a different dataset or epsilon grid");
    }
    for (SweepPoint& p : r.points) {
      auto it = std::find_if(merged.points.begin(), merged.points.end(),
                             [&](const SweepPoint& q) { return q.n_atoms == p.n_atoms; });
      if (it == merged.points.end()) {
        merged.points.push_back(std::move(p));
        continue;
      }
      for (auto& [k, v] : p.clean_accuracy) it->clean_accuracy[k] = v;
      for (auto& [k, v] : p.train_accuracy) it->train_accuracy[k] = v;
      for (auto& [k, v] : p.counters) it->counters[k] = v;
      for (AccuracyCurve& c : p.curves) it->curves.push_back(std::move(c));
    }
  }
  std::sort(merged.points.begin(), merged.points.end(),
            [](const SweepPoint& a, const SweepPoint& b) { return a.n_atoms < b.n_atoms; });
  compute_delta_acc(merged);
  if (json_out.empty() && csv_out.empty()) {
    std::cout << report_to_csv(merged);
  } else {
    write_report(merged, json_out, csv_out);
  }
  return 0;
}

int cmd_sweep(const Common& common, const std::string& out_dir) {
  const ExperimentConfig config = load(common);
  const PreparedData data = prepare_data(config);
  const fs::path out(out_dir);
  RunOptions options;
  options.output_dir = out;
  options.on_progress = [&](const RobustnessReport& r) {
    write_report(r, out / "report.json", out / "report.csv");
  };
  const RobustnessReport report = run_experiment(config, data, options);
  write_report(report, out / "report.json", out / "report.csv");
  for (const SweepPoint& p : report.points) {
    std::cout << "N=" << p.n_atoms << ":";
    for (const auto& [m, a] : p.clean_accuracy) std::cout << " " << m << "=" << percent(a);
    for (const auto& [a, d] : p.delta_acc) std::cout << " dAcc[" << a << "]=" << short_double(d);
    std::cout << "\n";
  }
  std::cout << "report written to " << (out / "report.json").string() << " and "
            << (out / "report.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum reservoir classifier robustness benchmark"};
  app.require_subcommand(1);

  Common common;
  int n_atoms = 0;
  std::string out, model = kQrcModel, checkpoint;
  std::vector<std::string> families{"fgsm", "pgd", "deepfool"}, inputs;
  std::string json_out, csv_out;

  auto* embed = app.add_subcommand("embed", "fit the pipeline and cache reservoir embeddings");
  add_common(embed, common);
  embed->add_option("-n,--n-atoms", n_atoms, "atom count (default: every sweep point)");
  embed->add_option("-o,--out", out, "output directory (default: cache directory)");

  auto* train = app.add_subcommand("train", "train a readout and write a checkpoint");
  add_common(train, common);
  train->add_option("-n,--n-atoms", n_atoms, "atom count (default: last sweep point)");
  train->add_option("-m,--model", model, "qrc_mlp, mlp or mlp_pixels");
  train->add_option("-o,--out", out, "checkpoint path")->required();

  auto* attack = app.add_subcommand("attack", "attack a checkpoint over the epsilon grid");
  add_common(attack, common);
  attack->add_option("-n,--n-atoms", n_atoms, "atom count (default: last sweep point)");
  attack->add_option("-m,--model", model, "qrc_mlp, mlp, mlp_pixels or qrc_mlp_embedding");
  attack->add_option("-k,--checkpoint", checkpoint, "checkpoint from 'train'")->required();
  attack->add_option("-a,--attack", families, "attack families")->delimiter(',');
  attack->add_option("-o,--out", out, "output directory")->required();

  auto* report = app.add_subcommand("report", "merge report JSON files and emit JSON/CSV");
  report->add_option("inputs", inputs, "report JSON files")->required();
  report->add_option("--json", json_out, "JSON output path");
  report->add_option("--csv", csv_out, "CSV output path (stdout when no output is given)");

  auto* sweep = app.add_subcommand("sweep", "run the full experiment of a config file");
  add_common(sweep, common);
  sweep->add_option("-o,--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*embed) return cmd_embed(common, n_atoms, out);
    if (*train) return cmd_train(common, n_atoms, model, out);
    if (*attack) return cmd_attack(common, n_atoms, model, checkpoint, families, out);
    if (*report) return cmd_report(inputs, json_out, csv_out);
    if (*sweep) return cmd_sweep(common, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
