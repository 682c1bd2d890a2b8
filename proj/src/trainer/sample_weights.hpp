// Copyright 2026 The gramscore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef GRAMSCORE_TRAINER_SAMPLE_WEIGHTS_HPP
#define GRAMSCORE_TRAINER_SAMPLE_WEIGHTS_HPP

#include <cstddef>
#include <vector>

namespace gramscore {

struct SampleWeights {
  std::size_t epoch = 0;
  std::vector<double> weights;
  // Set when the clean set was empty; weights are then all zero.
  bool degenerate = false;

  double sum() const;
  std::size_t support_size() const;
};

struct LossRecord {
  std::size_t epoch = 0;
  std::vector<double> losses;
};

struct CleanSet {
  std::size_t epoch = 0;
  // Members in ascending (loss, index) order.
  std::vector<std::size_t> indices;
  // Full ascending (loss, index) argsort; indices is its prefix.
  std::vector<std::size_t> permutation;

  bool empty() const noexcept { return indices.empty(); }
};

// Uniform 1/n. Throws ValidationError for n == 0.
SampleWeights init_weights(std::size_t n);

// floor(alpha * N) for alpha in [0, 1]. A relative slack of 1e-9 absorbs
// binary representation error, so 0.7 * 10 yields 7 rather than 6.
std::size_t clean_set_size(double alpha, std::size_t n);

// Keeps the clean_set_size(alpha, N) smallest losses; ties go to the lower
// index. Throws ValidationError for alpha outside [0, 1] or a non-finite loss.
CleanSet select_clean(const LossRecord& losses, double alpha);

// 1/|I_clean| on members and 0 elsewhere, for epoch clean.epoch + 1. An empty
// clean set gives all-zero weights with the degenerate flag.
SampleWeights update_weights(const CleanSet& clean, std::size_t n);

}  // namespace gramscore

#endif  // GRAMSCORE_TRAINER_SAMPLE_WEIGHTS_HPP
