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

#ifndef GRAMSCORE_MODEL_REGRESSION_MODEL_HPP
#define GRAMSCORE_MODEL_REGRESSION_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gramscore {

// One member of a mini-batch. `index` is the canonical dataset index and is
// only used for error reporting.
struct WeightedExample {
  std::string_view text;
  double target = 0.0;
  double weight = 0.0;
  std::size_t index = 0;
};

// Parameters plus embedded configuration; the unit of model exchange.
using ModelSnapshot = nlohmann::json;

// Text -> unbounded real score. Predictions are never clamped here.
class RegressionModel {
 public:
  virtual ~RegressionModel() = default;

  virtual std::string backend() const = 0;

  // Throws ValidationError for text without words.
  virtual double predict(std::string_view text) const = 0;
  virtual std::vector<double> predict_batch(std::span<const std::string> texts) const;

  // One optimiser step on (1/|B|) * sum_i w_i * (predict(x_i) - y_i)^2.
  // Returns that loss at the pre-update parameters. Throws TrainingDivergence
  // when the loss or an update is not finite.
  virtual double train_step(std::span<const WeightedExample> batch, double learning_rate) = 0;

  virtual ModelSnapshot snapshot() const = 0;
  virtual void restore(const ModelSnapshot& snapshot) = 0;
  virtual std::unique_ptr<RegressionModel> clone() const = 0;

  // Step size used when the caller asks for "auto"; see trainer docs.
  virtual double default_learning_rate(std::size_t dataset_size) const = 0;
};

// Validates the batch and computes the weighted loss from predictions.
double weighted_batch_loss(std::span<const WeightedExample> batch, std::span<const double> predictions);
void check_batch(std::span<const WeightedExample> batch);

std::unique_ptr<RegressionModel> make_model(const std::string& backend, std::uint64_t seed,
                                            const nlohmann::json& options = nlohmann::json::object());
std::unique_ptr<RegressionModel> model_from_snapshot(const ModelSnapshot& snapshot);

void save_model(const RegressionModel& model, const std::string& path,
                const nlohmann::json& run_metadata = nlohmann::json::object());
std::unique_ptr<RegressionModel> load_model(const std::string& path);

}  // namespace gramscore

#endif  // GRAMSCORE_MODEL_REGRESSION_MODEL_HPP
