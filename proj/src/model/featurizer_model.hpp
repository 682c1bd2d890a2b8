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

#ifndef GRAMSCORE_MODEL_FEATURIZER_MODEL_HPP
#define GRAMSCORE_MODEL_FEATURIZER_MODEL_HPP

#include <array>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "model/regression_model.hpp"

namespace gramscore {

// Feature vector:
//   [0] word count / 100
//   [1] mean word length / 5 (letters of word cores)
//   [2] type-token ratio of lowercase cores
//   [3..12] error-marker density per ten words, one per error type in
//           ErrorType order
//   [13..15] hinges max(0, t - k) of the total marker density t per ten
//           words at k = 0.5, 1, 2, so scores can flatten as errors pile up
inline constexpr std::size_t kFeatureCount = 3 + 10 + 3;
using FeatureVector = std::array<double, kFeatureCount>;

FeatureVector extract_features(std::string_view text);
std::string_view feature_name(std::size_t i);

struct FeaturizerConfig {
  std::uint64_t seed = 0;
  double init_scale = 0.01;  // weights start uniform in [-init_scale, init_scale]
  double init_bias = 3.0;
  double base_learning_rate = 0.1;  // multiplied by N for the "auto" step size
};

// Linear regressor over hand-built text features, trained by plain
// (non-adaptive) gradient descent.
class FeaturizerModel final : public RegressionModel {
 public:
  explicit FeaturizerModel(FeaturizerConfig config = {});

  std::string backend() const override { return "featurizer"; }
  double predict(std::string_view text) const override;
  double train_step(std::span<const WeightedExample> batch, double learning_rate) override;
  ModelSnapshot snapshot() const override;
  void restore(const ModelSnapshot& snapshot) override;
  std::unique_ptr<RegressionModel> clone() const override;
  double default_learning_rate(std::size_t dataset_size) const override;

  struct Gradient {
    FeatureVector weights{};
    double bias = 0.0;
  };
  // Loss and analytic gradient at the current parameters, without updating.
  double batch_loss(std::span<const WeightedExample> batch) const;
  Gradient gradient(std::span<const WeightedExample> batch) const;

  const FeatureVector& weights() const noexcept { return weights_; }
  double bias() const noexcept { return bias_; }
  void set_parameters(const FeatureVector& weights, double bias);
  const FeaturizerConfig& config() const noexcept { return config_; }

 private:
  const FeatureVector& features(std::string_view text) const;
  double linear(const FeatureVector& x) const;

  FeaturizerConfig config_;
  FeatureVector weights_{};
  double bias_ = 0.0;

  // Memo of extract_features; not part of the model state.
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::string, FeatureVector> cache_;
};

}  // namespace gramscore

#endif  // GRAMSCORE_MODEL_FEATURIZER_MODEL_HPP
