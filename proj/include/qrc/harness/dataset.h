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

#include <cstdint>
#include <string>
#include <vector>

#include "qrc/harness/idx.h"

namespace qrc::harness {

struct DatasetSpec {
  std::string name = "mnist";
  int per_class = 100;
  double train_fraction = 0.7;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Training samples per class: ceil(train_fraction * per_class), with a
/// product within 1e-9 of an integer taken as that integer.
int train_count(int per_class, double train_fraction);

struct Split {
  LabeledImages train;
  LabeledImages test;
  /// Source indices of the samples, in split order.
  std::vector<std::size_t> train_index;
  std::vector<std::size_t> test_index;
};

/// Draws per_class samples of every class 0..C-1 without replacement
/// (shuffle of the class's source indices seeded by (seed, class)), then
/// sends the first train_count of each class to train and the rest to test.
/// Both splits are ordered by class, then by draw order. Throws
/// DataError(kInsufficientSamples) when a class is too small.
Split balanced_subset(const LabeledImages& data, const DatasetSpec& spec);

/// First `per_class` samples of every class of `data` in order (all samples
/// when per_class <= 0); returns their indices.
std::vector<std::size_t> stratified_prefix(const std::vector<int>& labels, int per_class);

}  // namespace qrc::harness
