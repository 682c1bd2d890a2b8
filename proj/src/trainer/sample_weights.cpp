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

#include "trainer/sample_weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/error.hpp"

namespace gramscore {

double SampleWeights::sum() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

std::size_t SampleWeights::support_size() const {
  return static_cast<std::size_t>(std::count_if(weights.begin(), weights.end(), [](double w) { return w > 0.0; }));
}

SampleWeights init_weights(std::size_t n) {
  if (n == 0) throw ValidationError("cannot initialise weights for an empty dataset");
  SampleWeights w;
  w.epoch = 0;
  w.weights.assign(n, 1.0 / static_cast<double>(n));
  return w;
}

std::size_t clean_set_size(double alpha, std::size_t n) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ValidationError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  const double raw = alpha * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(std::floor(raw * (1.0 + 1e-9)));
  return std::min(k, n);
}

CleanSet select_clean(const LossRecord& record, double alpha) {
  const auto& losses = record.losses;
  const std::size_t k = clean_set_size(alpha, losses.size());
  for (std::size_t i = 0; i < losses.size(); ++i)
    if (!std::isfinite(losses[i]))
      throw ValidationError("loss for sample " + std::to_string(i) + " is not finite");

  CleanSet clean;
  clean.epoch = record.epoch;
  clean.permutation.resize(losses.size());
  std::iota(clean.permutation.begin(), clean.permutation.end(), std::size_t{0});
  std::stable_sort(clean.permutation.begin(), clean.permutation.end(),
                   [&](std::size_t a, std::size_t b) { return losses[a] < losses[b]; });
  clean.indices.assign(clean.permutation.begin(), clean.permutation.begin() + static_cast<std::ptrdiff_t>(k));
  return clean;
}

SampleWeights update_weights(const CleanSet& clean, std::size_t n) {
  SampleWeights w;
  w.epoch = clean.epoch + 1;
  w.weights.assign(n, 0.0);
  if (clean.indices.empty()) {
    w.degenerate = true;
    return w;
  }
  const double value = 1.0 / static_cast<double>(clean.indices.size());
  for (std::size_t i : clean.indices) {
    if (i >= n)
      throw ValidationError("clean-set index " + std::to_string(i) + " is out of range for " +
                            std::to_string(n) + " samples");
    if (w.weights[i] != 0.0) throw ValidationError("clean-set index " + std::to_string(i) + " is repeated");
    w.weights[i] = value;
  }
  return w;
}

}  // namespace gramscore
