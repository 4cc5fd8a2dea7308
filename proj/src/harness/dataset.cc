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

#include "qrc/harness/dataset.h"

#include <cmath>
#include <numeric>

#include "qrc/error.h"
#include "qrc/rng.h"

namespace qrc::harness {

void DatasetSpec::validate() const {
  if (per_class < 1) throw ConfigError("per_class must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0, 1)");
  }
}

int train_count(int per_class, double train_fraction) {
  const double t = train_fraction * per_class;
  const double r = std::round(t);
  if (std::abs(t - r) <= 1e-9 * std::max(1.0, t)) return static_cast<int>(r);
  return static_cast<int>(std::ceil(t));
}

Split balanced_subset(const LabeledImages& data, const DatasetSpec& spec) {
  spec.validate();
  const int classes = data.num_classes();
  if (classes < 1) throw DataError(DataError::Kind::kInsufficientSamples, "dataset has no samples");
  std::vector<std::vector<std::size_t>> by_class(classes);
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    if (data.labels[i] < 0) throw DataError(DataError::Kind::kFormat, "negative label");
    by_class[data.labels[i]].push_back(i);
  }
  const int n_train = train_count(spec.per_class, spec.train_fraction);
  Split split;
  split.train.side = split.test.side = data.side;
  for (int c = 0; c < classes; ++c) {
    auto& pool = by_class[c];
    if (static_cast<int>(pool.size()) < spec.per_class) {
      throw DataError(DataError::Kind::kInsufficientSamples,
                      "class " + std::to_string(c) + " has " + std::to_string(pool.size()) +
                          " samples, need " + std::to_string(spec.per_class));
    }
    Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(c)));
    rng.shuffle(pool);
    for (int k = 0; k < spec.per_class; ++k) {
      const std::size_t src = pool[k];
      const bool to_train = k < n_train;
      LabeledImages& dst = to_train ? split.train : split.test;
      dst.images.push_back(data.images[src]);
      dst.labels.push_back(c);
      (to_train ? split.train_index : split.test_index).push_back(src);
    }
  }
  return split;
}

std::vector<std::size_t> stratified_prefix(const std::vector<int>& labels, int per_class) {
  std::vector<std::size_t> out;
  if (per_class <= 0) {
    out.resize(labels.size());
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }
  std::vector<int> taken;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    if (c >= static_cast<int>(taken.size())) taken.resize(c + 1, 0);
    if (taken[c] < per_class) {
      ++taken[c];
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace qrc::harness
