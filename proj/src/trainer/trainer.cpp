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

#include "trainer/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"

namespace gramscore {

void TrainConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (epochs == 0) throw ConfigError("epochs must be positive");
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (learning_rate && !(*learning_rate > 0.0 && std::isfinite(*learning_rate)))
    throw ConfigError("learning_rate must be a positive number or auto");
}

bool TrainHistory::any_degenerate() const {
  return std::any_of(epochs.begin(), epochs.end(), [](const EpochRecord& e) { return e.degenerate; });
}

LossRecord per_sample_losses(const RegressionModel& model, const Dataset& dataset, std::size_t epoch) {
  const std::vector<double> targets = dataset.pseudo_scores();
  const std::vector<std::string> texts = dataset.texts();
  const std::vector<double> preds = model.predict_batch(texts);
  LossRecord record;
  record.epoch = epoch;
  record.losses.resize(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double r = preds[i] - targets[i];
    record.losses[i] = r * r;
    if (!std::isfinite(record.losses[i]))
      throw TrainingDivergence("non-finite loss for sample " + dataset[i].sample().id, {i});
  }
  return record;
}

std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, std::size_t epoch, bool shuffle) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle) {
    std::mt19937_64 gen(derive_seed(seed, {0x5EED, epoch}));
    std::shuffle(order.begin(), order.end(), gen);
  }
  return order;
}

TrainHistory train(RegressionModel& model, const Dataset& dataset, const TrainConfig& config,
                   const TrainCallbacks& callbacks) {
  config.validate();
  const std::size_t n = dataset.size();
  if (n == 0) throw ValidationError("cannot train on an empty dataset");
  const std::vector<double> targets = dataset.pseudo_scores();

  TrainHistory history;
  history.learning_rate = config.learning_rate ? *config.learning_rate : model.default_learning_rate(n);
  if (!(history.learning_rate > 0.0 && std::isfinite(history.learning_rate)))
    throw ConfigError("resolved learning rate is not a positive number");

  SampleWeights weights = init_weights(n);
  std::vector<WeightedExample> batch;
  batch.reserve(config.batch_size);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const auto order = epoch_order(n, config.seed, epoch, config.shuffle);
    std::size_t batch_no = 0;
    for (std::size_t start = 0; start < n; start += config.batch_size, ++batch_no) {
      batch.clear();
      const std::size_t stop = std::min(n, start + config.batch_size);
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t i = order[k];
        batch.push_back({dataset[i].sample().text, targets[i], weights.weights[i], i});
      }
      try {
        model.train_step(batch, history.learning_rate);
      } catch (const TrainingDivergence& e) {
        throw TrainingDivergence("epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch_no) +
                                     ": " + e.what(),
                                 e.batch_indices());
      }
      if (callbacks.on_step) callbacks.on_step(epoch, batch_no, model);
    }

    EpochRecord rec;
    rec.epoch = epoch;
    LossRecord losses = per_sample_losses(model, dataset, epoch);
    const CleanSet clean = select_clean(losses, config.alpha);
    SampleWeights next = update_weights(clean, n);
    if (next.degenerate) {
      rec.degenerate = true;
      next.weights = weights.weights;
    }
    rec.clean_set_size = clean.indices.size();
    double weighted = 0.0;
    std::size_t changed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      weighted += weights.weights[i] * losses.losses[i];
      if ((weights.weights[i] > 0.0) != (next.weights[i] > 0.0)) ++changed;
    }
    rec.mean_weighted_loss = weighted;
    rec.churn_fraction = static_cast<double>(changed) / static_cast<double>(n);
    rec.losses = std::move(losses.losses);
    rec.weights = weights.weights;
    rec.next_weights = next.weights;
    if (callbacks.on_epoch) callbacks.on_epoch(rec, model);
    history.epochs.push_back(std::move(rec));
    weights = std::move(next);
  }
  return history;
}

std::string history_csv(const TrainHistory& history) {
  std::string out = "epoch,mean_weighted_loss,clean_set_size,churn_fraction,degenerate\n";
  for (const auto& e : history.epochs) {
    out += std::to_string(e.epoch) + "," + format_score(e.mean_weighted_loss) + "," +
           std::to_string(e.clean_set_size) + "," + format_score(e.churn_fraction) + "," +
           (e.degenerate ? "1" : "0") + "\n";
  }
  return out;
}

std::string loss_matrix_csv(const TrainHistory& history, const Dataset& dataset) {
  std::string out = "epoch,index,sample_id,loss,weight,next_weight\n";
  for (const auto& e : history.epochs) {
    for (std::size_t i = 0; i < e.losses.size(); ++i) {
      out += std::to_string(e.epoch) + "," + std::to_string(i) + "," + csv_escape(dataset[i].sample().id) + "," +
             format_score(e.losses[i]) + "," + format_score(e.weights[i]) + "," + format_score(e.next_weights[i]) +
             "\n";
    }
  }
  return out;
}

}  // namespace gramscore
