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

#include "qrc/readout/checkpoint.h"

#include <cmath>

#include "qrc/encoding/matrix_container.h"
#include "qrc/error.h"

namespace qrc::readout {
namespace {

int as_count(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1e9) || std::floor(v) != v) {
    throw DataError(DataError::Kind::kFormat, std::string("checkpoint has an invalid ") + what);
  }
  return static_cast<int>(v);
}

}  // namespace

std::string encode_checkpoint(const Checkpoint& checkpoint) {
  const MlpParams& p = checkpoint.params;
  p.validate();
  const TrainConfig& t = checkpoint.train_config;
  std::vector<double> head{static_cast<double>(p.layers.size())};
  for (const Layer& l : p.layers) {
    head.push_back(static_cast<double>(l.weight.rows()));
    head.push_back(static_cast<double>(l.weight.cols()));
  }
  head.insert(head.end(), {p.dropout_rate, t.learning_rate, static_cast<double>(t.batch_size),
                           static_cast<double>(t.max_epochs), t.beta1, t.beta2, t.epsilon,
                           static_cast<double>(t.seed >> 32),
                           static_cast<double>(t.seed & 0xFFFFFFFFULL)});
  const Eigen::VectorXd flat = p.flatten();
  Eigen::MatrixXd column(static_cast<Eigen::Index>(head.size()) + flat.size(), 1);
  for (std::size_t i = 0; i < head.size(); ++i) column(i, 0) = head[i];
  column.bottomRows(flat.size()) = flat;
  return encoding::encode_matrix(encoding::kCheckpointMagic, column);
}

Checkpoint decode_checkpoint(std::string_view bytes) {
  const Eigen::MatrixXd m = encoding::decode_matrix(bytes, encoding::kCheckpointMagic);
  if (m.cols() != 1 || m.rows() < 1) throw DataError(DataError::Kind::kFormat, "checkpoint is not a column");
  Eigen::Index at = 0;
  auto next = [&]() {
    if (at >= m.rows()) throw DataError(DataError::Kind::kTruncated, "checkpoint header is truncated");
    return m(at++, 0);
  };
  const int layers = as_count(next(), "layer count");
  if (layers < 1) throw DataError(DataError::Kind::kFormat, "checkpoint has no layers");
  std::vector<int> sizes;
  for (int l = 0; l < layers; ++l) {
    const int out = as_count(next(), "layer shape");
    const int in = as_count(next(), "layer shape");
    if (l == 0) sizes.push_back(in);
    if (in != sizes.back()) throw DataError(DataError::Kind::kFormat, "checkpoint layer shapes disagree");
    sizes.push_back(out);
  }
  Checkpoint c;
  const double dropout = next();
  try {
    c.params = MlpParams::zeros(sizes, dropout);
  } catch (const ConfigError& e) {
    throw DataError(DataError::Kind::kFormat, std::string("checkpoint: ") + e.what());
  }
  c.train_config.learning_rate = next();
  c.train_config.batch_size = as_count(next(), "batch size");
  c.train_config.max_epochs = as_count(next(), "epoch count");
  c.train_config.beta1 = next();
  c.train_config.beta2 = next();
  c.train_config.epsilon = next();
  const auto hi = static_cast<std::uint64_t>(next());
  const auto lo = static_cast<std::uint64_t>(next());
  c.train_config.seed = (hi << 32) | lo;
  const auto count = static_cast<Eigen::Index>(c.params.parameter_count());
  if (m.rows() - at != count) {
    throw DataError(DataError::Kind::kCountMismatch, "checkpoint parameter count does not match its shapes");
  }
  c.params.unflatten(m.bottomRows(count).col(0));
  return c;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  encoding::write_file_bytes(path, encode_checkpoint(checkpoint));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(encoding::read_file_bytes(path));
}

}  // namespace qrc::readout
