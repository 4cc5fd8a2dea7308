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

#include "qrc/harness/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "qrc/encoding/matrix_container.h"
#include "qrc/error.h"
#include "qrc/harness/config.h"

namespace qrc::harness {
namespace {

using nlohmann::json;

void escape_string(const std::string& s, std::string& out) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

// nlohmann prints the shortest round-trip form; reports use %.17g instead.
void dump(const json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  const std::string close(indent, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        escape_string(it.key(), out);
        out += ": ";
        dump(it.value(), indent + 2, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out += scalars ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += scalars ? ", " : ",\n";
        first = false;
        if (!scalars) out += pad;
        dump(e, indent + 2, out);
      }
      out += scalars ? "]" : "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) throw NumericalError("cannot serialise a non-finite number");
      out += format_double(v);
      return;
    }
    case json::value_t::string:
      escape_string(j.get<std::string>(), out);
      return;
    default:
      out += j.dump();
  }
}

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.contains(key)) throw DataError(DataError::Kind::kFormat, std::string("report is missing '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace

double mean_difference(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw ConfigError("curves differ in length or are empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] - b[i];
  return sum / static_cast<double>(a.size());
}

void compute_delta_acc(RobustnessReport& report) {
  for (SweepPoint& p : report.points) {
    p.delta_acc.clear();
    for (const AccuracyCurve& q : p.curves) {
      if (q.model != kQrcModel) continue;
      for (const AccuracyCurve& m : p.curves) {
        if (m.model == kMlpModel && m.attack == q.attack) {
          p.delta_acc[q.attack] = mean_difference(q.accuracy, m.accuracy);
        }
      }
    }
  }
}

std::string report_to_json(const RobustnessReport& r) {
  json j;
  j["format"] = "qrc-robustness-report/1";
  j["dataset"] = r.dataset;
  j["config_hash"] = r.config_hash;
  j["config"] = r.config;
  j["dataset_sha256"] = r.dataset_sha256;
  j["epsilons"] = r.epsilons;
  json points = json::array();
  for (const SweepPoint& p : r.points) {
    json jp;
    jp["n_atoms"] = p.n_atoms;
    jp["retained_dim"] = p.retained_dim;
    jp["embedding_dim"] = p.embedding_dim;
    jp["clean_accuracy"] = p.clean_accuracy;
    jp["train_accuracy"] = p.train_accuracy;
    json curves = json::array();
    for (const AccuracyCurve& c : p.curves) {
      curves.push_back({{"model", c.model}, {"attack", c.attack}, {"eval_size", c.eval_size},
                        {"accuracy", c.accuracy}});
    }
    jp["curves"] = curves;
    jp["delta_acc"] = p.delta_acc;
    jp["counters"] = p.counters;
    points.push_back(jp);
  }
  j["points"] = points;
  std::string out;
  dump(j, 0, out);
  out += '\n';
  return out;
}

RobustnessReport report_from_json(const std::string& text) {
  RobustnessReport r;
  try {
    const json j = json::parse(text);
    r.dataset = get_field<std::string>(j, "dataset");
    r.config_hash = get_field<std::string>(j, "config_hash");
    r.config = get_field<std::map<std::string, std::string>>(j, "config");
    r.dataset_sha256 = get_field<std::map<std::string, std::string>>(j, "dataset_sha256");
    r.epsilons = get_field<std::vector<double>>(j, "epsilons");
    for (const json& jp : get_field<json>(j, "points")) {
      SweepPoint p;
      p.n_atoms = get_field<int>(jp, "n_atoms");
      p.retained_dim = get_field<int>(jp, "retained_dim");
      p.embedding_dim = get_field<int>(jp, "embedding_dim");
      p.clean_accuracy = get_field<std::map<std::string, double>>(jp, "clean_accuracy");
      p.train_accuracy = get_field<std::map<std::string, double>>(jp, "train_accuracy");
      for (const json& jc : get_field<json>(jp, "curves")) {
        p.curves.push_back({get_field<std::string>(jc, "model"), get_field<std::string>(jc, "attack"),
                            get_field<int>(jc, "eval_size"),
                            get_field<std::vector<double>>(jc, "accuracy")});
      }
      p.delta_acc = get_field<std::map<std::string, double>>(jp, "delta_acc");
      p.counters = get_field<std::map<std::string, long long>>(jp, "counters");
      r.points.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw DataError(DataError::Kind::kFormat, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string report_to_csv(const RobustnessReport& r) {
  std::string out = "dataset,model,attack,N,epsilon,accuracy\n";
  for (const SweepPoint& p : r.points) {
    for (const AccuracyCurve& c : p.curves) {
      if (c.accuracy.size() != r.epsilons.size()) {
        throw ConfigError("curve length does not match the epsilon grid");
      }
      for (std::size_t i = 0; i < c.accuracy.size(); ++i) {
        out += r.dataset + "," + c.model + "," + c.attack + "," + std::to_string(p.n_atoms) + "," +
               format_double(r.epsilons[i]) + "," + format_double(c.accuracy[i]) + "\n";
      }
    }
  }
  return out;
}

void write_report(const RobustnessReport& report, const std::filesystem::path& json_path,
                  const std::filesystem::path& csv_path) {
  if (!json_path.empty()) encoding::write_file_bytes(json_path, report_to_json(report));
  if (!csv_path.empty()) encoding::write_file_bytes(csv_path, report_to_csv(report));
}

}  // namespace qrc::harness
