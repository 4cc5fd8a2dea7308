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

#include "qrc/harness/config.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "qrc/encoding/matrix_container.h"
#include "qrc/error.h"
#include "qrc/harness/sha256.h"

namespace qrc::harness {
namespace {

using dynamics::kTwoPi;

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(v);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as " + expected);
}

double to_double(const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  double factor = 1.0;
  for (const char* prefix : {"2pi*", "2*pi*", "2π*"}) {
    const std::string p(prefix);
    if (v.size() > p.size() && v.compare(0, p.size(), p) == 0) {
      factor = kTwoPi;
      v = trim(v.substr(p.size()));
      break;
    }
  }
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    bad(key, raw, "a number");
  }
  if (used != v.size() || !std::isfinite(d)) bad(key, raw, "a number");
  return factor == 1.0 ? d : factor * d;
}

long long to_int(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  std::size_t used = 0;
  long long n = 0;
  try {
    n = std::stoll(v, &used);
  } catch (const std::exception&) {
    bad(key, raw, "an integer");
  }
  if (used != v.size()) bad(key, raw, "an integer");
  return n;
}

int to_int32(const std::string& key, const std::string& raw) {
  const long long n = to_int(key, raw);
  if (n < -2147483647LL || n > 2147483647LL) bad(key, raw, "a 32-bit integer");
  return static_cast<int>(n);
}

std::uint64_t to_u64(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  std::size_t used = 0;
  unsigned long long n = 0;
  if (v.empty() || v[0] == '-') bad(key, raw, "an unsigned integer");
  try {
    n = std::stoull(v, &used);
  } catch (const std::exception&) {
    bad(key, raw, "an unsigned integer");
  }
  if (used != v.size()) bad(key, raw, "an unsigned integer");
  return n;
}

bool to_bool(const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad(key, raw, "a boolean");
}

std::vector<int> to_int_list(const std::string& key, const std::string& raw) {
  std::vector<int> out;
  for (const auto& item : split_list(raw)) out.push_back(to_int32(key, item));
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += fmt(items[i]);
  }
  return out;
}

std::string method_name(dynamics::PropagationMethod m) {
  switch (m) {
    case dynamics::PropagationMethod::kKrylov:
      return "krylov";
    case dynamics::PropagationMethod::kChebyshev:
      return "chebyshev";
    case dynamics::PropagationMethod::kRungeKutta4:
      return "rk4";
  }
  return "unknown";
}

struct Field {
  const char* key;
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define QRC_DOUBLE(name, member)                                                                \
  Field {                                                                                       \
    name, [](ExperimentConfig& c, const std::string& k, const std::string& v) {               \
      c.member = to_double(k, v);                                                               \
    },                                                                                          \
        [](const ExperimentConfig& c) { return format_double(c.member); }                       \
  }
#define QRC_INT(name, member)                                                                   \
  Field {                                                                                       \
    name, [](ExperimentConfig& c, const std::string& k, const std::string& v) {               \
      c.member = to_int32(k, v);                                                                \
    },                                                                                          \
        [](const ExperimentConfig& c) { return std::to_string(c.member); }                      \
  }
#define QRC_BOOL(name, member)                                                                  \
  Field {                                                                                       \
    name, [](ExperimentConfig& c, const std::string& k, const std::string& v) {               \
      c.member = to_bool(k, v);                                                                 \
    },                                                                                          \
        [](const ExperimentConfig& c) { return std::string(c.member ? "true" : "false"); }      \
  }
#define QRC_STRING(name, member)                                                                \
  Field {                                                                                       \
    name, [](ExperimentConfig& c, const std::string&, const std::string& v) { c.member = trim(v); }, \
        [](const ExperimentConfig& c) { return std::string(c.member); }                         \
  }
#define QRC_PATH(name, member)                                                                  \
  Field {                                                                                       \
    name, [](ExperimentConfig& c, const std::string&, const std::string& v) { c.member = trim(v); }, \
        [](const ExperimentConfig& c) { return c.member.string(); }                             \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> kFields = {
      QRC_STRING("dataset", dataset),
      QRC_PATH("train_images", train_images),
      QRC_PATH("train_labels", train_labels),
      QRC_STRING("images_sha256", images_sha256),
      QRC_STRING("labels_sha256", labels_sha256),
      QRC_INT("per_class", per_class),
      QRC_DOUBLE("train_fraction", train_fraction),
      Field{"master_seed",
            [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.master_seed = to_u64(k, v); },
            [](const ExperimentConfig& c) { return std::to_string(c.master_seed); }},
      Field{"n_sweep",
            [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.n_sweep = to_int_list(k, v); },
            [](const ExperimentConfig& c) { return join(c.n_sweep, [](int n) { return std::to_string(n); }); }},
      QRC_DOUBLE("lattice_spacing", reservoir.lattice_spacing),
      QRC_DOUBLE("c6", reservoir.c6_coefficient),
      QRC_DOUBLE("rabi_frequency", reservoir.rabi_frequency),
      QRC_DOUBLE("detuning_min", reservoir.detuning_min),
      QRC_DOUBLE("detuning_max", reservoir.detuning_max),
      Field{"local_modulation",
            [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.local_modulation.clear();
              for (const auto& item : split_list(v)) c.local_modulation.push_back(to_double(k, item));
            },
            [](const ExperimentConfig& c) { return join(c.local_modulation, format_double); }},
      QRC_DOUBLE("total_time", reservoir.total_time),
      QRC_INT("snapshots", reservoir.num_snapshots),
      Field{"initial_state",
            [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              const std::string s = trim(v);
              if (s == "plus") {
                c.reservoir.initial_state = dynamics::InitialState::kAllPlus;
              } else if (s == "ground") {
                c.reservoir.initial_state = dynamics::InitialState::kAllGround;
              } else {
                bad(k, v, "'plus' or 'ground'");
              }
            },
            [](const ExperimentConfig& c) {
              return std::string(c.reservoir.initial_state == dynamics::InitialState::kAllPlus ? "plus" : "ground");
            }},
      Field{"propagator",
            [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              const std::string s = trim(v);
              if (s == "chebyshev") {
                c.propagator.method = dynamics::PropagationMethod::kChebyshev;
              } else if (s == "krylov") {
                c.propagator.method = dynamics::PropagationMethod::kKrylov;
              } else if (s == "rk4") {
                c.propagator.method = dynamics::PropagationMethod::kRungeKutta4;
              } else {
                bad(k, v, "'chebyshev', 'krylov' or 'rk4'");
              }
            },
            [](const ExperimentConfig& c) { return method_name(c.propagator.method); }},
      QRC_DOUBLE("propagator_tolerance", propagator.tolerance),
      QRC_INT("downsample_size", downsample_size),
      QRC_INT("patch_width", patch_width),
      QRC_INT("retained_dim", retained_dim),
      QRC_DOUBLE("variance_threshold", variance_threshold),
      QRC_DOUBLE("jacobian_step", jacobian_step),
      Field{"hidden_layers",
            [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.hidden_layers = to_int_list(k, v); },
            [](const ExperimentConfig& c) { return join(c.hidden_layers, [](int n) { return std::to_string(n); }); }},
      QRC_DOUBLE("dropout", dropout),
      QRC_DOUBLE("learning_rate", train.learning_rate),
      QRC_INT("batch_size", train.batch_size),
      QRC_INT("epochs", train.max_epochs),
      QRC_DOUBLE("adam_beta1", train.beta1),
      QRC_DOUBLE("adam_beta2", train.beta2),
      QRC_DOUBLE("adam_epsilon", train.epsilon),
      Field{"models",
            [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.models = split_list(v);
              for (const auto& m : c.models) {
                if (m != kQrcModel && m != kMlpModel && m != kQrcEmbeddingModel && m != kPixelModel) {
                  bad(k, m, "a model name (qrc_mlp, mlp, qrc_mlp_embedding, mlp_pixels)");
                }
              }
            },
            [](const ExperimentConfig& c) { return join(c.models, [](const std::string& s) { return s; }); }},
      Field{"attacks",
            [](ExperimentConfig& c, const std::string&, const std::string& v) {
              c.attacks.clear();
              for (const auto& a : split_list(v)) c.attacks.push_back(attacks::parse_family(a));
            },
            [](const ExperimentConfig& c) { return join(c.attacks, attacks::family_name); }},
      QRC_DOUBLE("epsilon_max", epsilon_max),
      QRC_INT("epsilon_points", epsilon_points),
      QRC_INT("attack_steps", attack_steps),
      QRC_DOUBLE("attack_step_size", attack_step_size),
      QRC_DOUBLE("deepfool_overshoot", deepfool_overshoot),
      QRC_BOOL("pgd_random_start", pgd_random_start),
      Field{"attack_n_sweep",
            [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.attack_n_sweep = to_int_list(k, v); },
            [](const ExperimentConfig& c) { return join(c.attack_n_sweep, [](int n) { return std::to_string(n); }); }},
      QRC_INT("eval_per_class_fgsm", eval_per_class_fgsm),
      QRC_INT("eval_per_class_pgd", eval_per_class_pgd),
      QRC_INT("eval_per_class_deepfool", eval_per_class_deepfool),
      QRC_PATH("cache_dir", cache_dir),
      QRC_BOOL("use_cache", use_cache),
      QRC_BOOL("dump_adversarial", dump_adversarial),
  };
  return kFields;
}

#undef QRC_DOUBLE
#undef QRC_INT
#undef QRC_BOOL
#undef QRC_STRING
#undef QRC_PATH

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_location_key(const std::string& key) {
  return key == "train_images" || key == "train_labels" || key == "cache_dir" ||
         key == "use_cache" || key == "dump_adversarial";
}

std::vector<double> ExperimentConfig::epsilon_grid() const {
  std::vector<double> grid;
  if (epsilon_points == 1) return {0.0};
  for (int k = 0; k < epsilon_points; ++k) {
    const double raw = k * epsilon_max / (epsilon_points - 1);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", raw);
    grid.push_back(std::stod(buf));
  }
  return grid;
}

dynamics::ReservoirConfig ExperimentConfig::reservoir_for(int n_atoms) const {
  dynamics::ReservoirConfig r = reservoir;
  r.n_atoms = n_atoms;
  if (local_modulation.size() == 1) {
    r.local_modulation.assign(n_atoms, local_modulation.front());
  } else if (static_cast<int>(local_modulation.size()) >= n_atoms) {
    r.local_modulation.assign(local_modulation.begin(), local_modulation.begin() + n_atoms);
  } else {
    throw ConfigError("local_modulation lists " + std::to_string(local_modulation.size()) +
                      " values but N = " + std::to_string(n_atoms));
  }
  return r;
}

encoding::PipelineConfig ExperimentConfig::pipeline_for(int n_atoms) const {
  encoding::PipelineConfig p;
  p.downsample_size = downsample_size;
  p.patch_width = patch_width;
  p.retained_dim = retained_dim;
  p.variance_threshold = variance_threshold;
  p.reservoir = reservoir_for(n_atoms);
  p.propagator = propagator;
  p.jacobian_step = jacobian_step;
  return p;
}

std::vector<int> ExperimentConfig::attack_points() const {
  return attack_n_sweep.empty() ? n_sweep : attack_n_sweep;
}

int ExperimentConfig::eval_per_class(attacks::AttackFamily family) const {
  switch (family) {
    case attacks::AttackFamily::kFgsm:
      return eval_per_class_fgsm;
    case attacks::AttackFamily::kPgd:
      return eval_per_class_pgd;
    case attacks::AttackFamily::kDeepFool:
      return eval_per_class_deepfool;
  }
  return 0;
}

bool ExperimentConfig::has_model(const std::string& name) const {
  return std::find(models.begin(), models.end(), name) != models.end();
}

void ExperimentConfig::validate() const {
  if (dataset.empty()) throw ConfigError("dataset name is empty");
  if (per_class < 1) throw ConfigError("per_class must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("train_fraction must lie in (0, 1)");
  for (int n : n_sweep) {
    if (n < 1) throw ConfigError("n_sweep entries must be >= 1");
  }
  for (int n : attack_n_sweep) {
    if (std::find(n_sweep.begin(), n_sweep.end(), n) == n_sweep.end()) {
      throw ConfigError("attack_n_sweep entry " + std::to_string(n) + " is not in n_sweep");
    }
  }
  for (int n : n_sweep) pipeline_for(n).validate();
  if (hidden_layers.empty()) throw ConfigError("hidden_layers is empty");
  for (int h : hidden_layers) {
    if (h < 1) throw ConfigError("hidden layer sizes must be >= 1");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
  train.validate();
  if (models.empty()) throw ConfigError("no models selected");
  if (!(epsilon_max >= 0.0)) throw ConfigError("epsilon_max must be >= 0");
  if (epsilon_points < 1) throw ConfigError("epsilon_points must be >= 1");
  attacks::AttackSpec spec;
  spec.steps = attack_steps;
  spec.step_size = attack_step_size;
  spec.overshoot = deepfool_overshoot;
  spec.validate();
  if (eval_per_class_fgsm < 0 || eval_per_class_pgd < 0 || eval_per_class_deepfool < 0) {
    throw ConfigError("eval_per_class values must be >= 0");
  }
}

std::map<std::string, std::string> ExperimentConfig::canonical() const {
  std::map<std::string, std::string> out;
  for (const Field& f : fields()) out[f.key] = f.get(*this);
  return out;
}

std::string ExperimentConfig::hash() const {
  std::string text;
  for (const auto& [k, v] : canonical()) {
    if (is_location_key(k)) continue;
    text += k + "=" + v + "\n";
  }
  return sha256_hex(text);
}

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value) {
  for (const Field& f : fields()) {
    if (key == f.key) {
      f.set(config, key, value);
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected 'key = value'");
    }
    set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  for (std::filesystem::path* p : {&config.train_images, &config.train_labels, &config.cache_dir}) {
    if (!p->empty() && p->is_relative() && !base_dir.empty()) *p = base_dir / *p;
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = encoding::read_file_bytes(path);
  } catch (const DataError& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  return parse_config(text, path.parent_path());
}

std::string format_config(const ExperimentConfig& config) {
  std::string out;
  for (const Field& f : fields()) out += std::string(f.key) + " = " + f.get(config) + "\n";
  return out;
}

}  // namespace qrc::harness
