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

#ifndef GRAMSCORE_TRAINER_TRAINER_HPP
#define GRAMSCORE_TRAINER_TRAINER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dataset/dataset.hpp"
#include "model/regression_model.hpp"
#include "trainer/sample_weights.hpp"

namespace gramscore {

struct TrainConfig {
  double alpha = 0.3;
  std::size_t epochs = 10;
  std::size_t batch_size = 32;
  // Unset means "auto": model.default_learning_rate(N).
  std::optional<double> learning_rate;
  std::uint64_t seed = 0;
  bool shuffle = true;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;
  // sum_i w_i * l_i with the weights used during the epoch and the losses
  // measured after it.
  double mean_weighted_loss = 0.0;
  std::size_t clean_set_size = 0;
  // |support(next) xor support(current)| / N.
  double churn_fraction = 0.0;
  // The clean set was empty; next-epoch weights were carried over.
  bool degenerate = false;
  std::vector<double> losses;
  std::vector<double> weights;       // used during this epoch
  std::vector<double> next_weights;  // used during the following epoch
};

struct TrainHistory {
  double learning_rate = 0.0;
  std::vector<EpochRecord> epochs;

  bool any_degenerate() const;
};

struct TrainCallbacks {
  // After every train_step: (epoch, batch number, model).
  std::function<void(std::size_t, std::size_t, const RegressionModel&)> on_step;
  std::function<void(const EpochRecord&, const RegressionModel&)> on_epoch;
};

// Squared error against the pseudo label for every sample, in index order.
// Throws ValidationError when a pseudo label is missing and
// TrainingDivergence when a prediction is not finite.
LossRecord per_sample_losses(const RegressionModel& model, const Dataset& dataset, std::size_t epoch = 0);

// Batch order for one epoch: identity, or a shuffle seeded by (seed, epoch).
std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, std::size_t epoch, bool shuffle);

// Trains `model` in place and returns the per-epoch history.
TrainHistory train(RegressionModel& model, const Dataset& dataset, const TrainConfig& config,
                   const TrainCallbacks& callbacks = {});

// Columns: epoch, mean_weighted_loss, clean_set_size, churn_fraction, degenerate.
std::string history_csv(const TrainHistory& history);
// Long format: epoch, index, sample_id, loss, weight, next_weight.
std::string loss_matrix_csv(const TrainHistory& history, const Dataset& dataset);

}  // namespace gramscore

#endif  // GRAMSCORE_TRAINER_TRAINER_HPP
