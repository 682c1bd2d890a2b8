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

#include "model/featurizer_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"
#include "text/markers.hpp"

namespace gramscore {

namespace {

constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "word_count",
    "mean_word_length",
    "type_token_ratio",
    "filler_word_density",
    "redundant_phrase_density",
    "word_order_density",
    "verb_form_density",
    "preposition_density",
    "tense_density",
    "subject_verb_agreement_density",
    "spelling_density",
    "punctuation_density",
    "pronoun_density",
    "total_density_hinge_0.5",
    "total_density_hinge_1",
    "total_density_hinge_2",
};

}  // namespace

FeatureVector extract_features(std::string_view text) {
  const auto words = analyze_words(text);
  if (words.empty()) throw ValidationError("cannot score text without words");
  FeatureVector x{};
  const double n = static_cast<double>(words.size());
  double letters = 0;
  std::unordered_set<std::string> types;
  for (const auto& w : words) {
    for (char c : w.core)
      if (std::isalpha(static_cast<unsigned char>(c))) ++letters;
    types.insert(w.lower);
  }
  x[0] = n / 100.0 - 0.5;
  x[1] = letters / n / 5.0 - 0.85;
  x[2] = static_cast<double>(types.size()) / n - 0.7;
  const MarkerCounts m = count_markers(text);
  double total = 0.0;
  for (std::size_t t = 0; t < kErrorTypeCount; ++t) {
    x[3 + t] = 10.0 * m.counts[t] / n;
    total += x[3 + t];
  }
  x[13] = std::max(0.0, total - 0.5);
  x[14] = std::max(0.0, total - 1.0);
  x[15] = std::max(0.0, total - 2.0);
  return x;
}

std::string_view feature_name(std::size_t i) { return kFeatureNames.at(i); }

FeaturizerModel::FeaturizerModel(FeaturizerConfig config) : config_(config) {
  std::uint64_t state = derive_seed(config_.seed, {0xFEA7});
  for (auto& w : weights_) {
    state = splitmix64(state);
    w = (2.0 * unit_interval(state) - 1.0) * config_.init_scale;
  }
  bias_ = config_.init_bias;
}

const FeatureVector& FeaturizerModel::features(std::string_view text) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(std::string(text));
  if (it == cache_.end()) it = cache_.emplace(std::string(text), extract_features(text)).first;
  return it->second;
}

double FeaturizerModel::linear(const FeatureVector& x) const {
  double y = bias_;
  for (std::size_t k = 0; k < kFeatureCount; ++k) y += weights_[k] * x[k];
  return y;
}

double FeaturizerModel::predict(std::string_view text) const { return linear(features(text)); }

double FeaturizerModel::batch_loss(std::span<const WeightedExample> batch) const {
  check_batch(batch);
  std::vector<double> preds;
  preds.reserve(batch.size());
  for (const auto& ex : batch) preds.push_back(predict(ex.text));
  return weighted_batch_loss(batch, preds);
}

FeaturizerModel::Gradient FeaturizerModel::gradient(std::span<const WeightedExample> batch) const {
  check_batch(batch);
  Gradient g;
  const double scale = 2.0 / static_cast<double>(batch.size());
  for (const auto& ex : batch) {
    const auto& x = features(ex.text);
    const double coeff = scale * ex.weight * (linear(x) - ex.target);
    for (std::size_t k = 0; k < kFeatureCount; ++k) g.weights[k] += coeff * x[k];
    g.bias += coeff;
  }
  return g;
}

double FeaturizerModel::train_step(std::span<const WeightedExample> batch, double learning_rate) {
  const double loss = batch_loss(batch);
  std::vector<std::size_t> indices;
  auto fail = [&](const std::string& what) {
    for (const auto& ex : batch) indices.push_back(ex.index);
    throw TrainingDivergence(what, indices);
  };
  if (!std::isfinite(loss)) fail("non-finite batch loss");
  const Gradient g = gradient(batch);
  FeatureVector next = weights_;
  for (std::size_t k = 0; k < kFeatureCount; ++k) next[k] -= learning_rate * g.weights[k];
  const double next_bias = bias_ - learning_rate * g.bias;
  for (double v : next)
    if (!std::isfinite(v)) fail("non-finite parameter after update");
  if (!std::isfinite(next_bias)) fail("non-finite parameter after update");
  weights_ = next;
  bias_ = next_bias;
  return loss;
}

ModelSnapshot FeaturizerModel::snapshot() const {
  ModelSnapshot s;
  s["backend"] = backend();
  s["config"] = {{"seed", config_.seed},
                 {"init_scale", config_.init_scale},
                 {"init_bias", config_.init_bias},
                 {"base_learning_rate", config_.base_learning_rate}};
  nlohmann::json names = nlohmann::json::array();
  for (auto n : kFeatureNames) names.push_back(n);
  s["features"] = names;
  s["weights"] = std::vector<double>(weights_.begin(), weights_.end());
  s["bias"] = bias_;
  return s;
}

void FeaturizerModel::restore(const ModelSnapshot& s) {
  if (s.value("backend", "") != backend())
    throw ValidationError("snapshot is not a featurizer model");
  const auto w = s.at("weights").get<std::vector<double>>();
  if (w.size() != kFeatureCount) throw ValidationError("featurizer snapshot has wrong weight count");
  if (s.contains("config")) {
    const auto& c = s["config"];
    config_.seed = c.value("seed", config_.seed);
    config_.init_scale = c.value("init_scale", config_.init_scale);
    config_.init_bias = c.value("init_bias", config_.init_bias);
    config_.base_learning_rate = c.value("base_learning_rate", config_.base_learning_rate);
  }
  std::copy(w.begin(), w.end(), weights_.begin());
  bias_ = s.at("bias").get<double>();
}

std::unique_ptr<RegressionModel> FeaturizerModel::clone() const {
  auto m = std::make_unique<FeaturizerModel>(config_);
  m->weights_ = weights_;
  m->bias_ = bias_;
  return m;
}

double FeaturizerModel::default_learning_rate(std::size_t dataset_size) const {
  return config_.base_learning_rate * static_cast<double>(dataset_size);
}

void FeaturizerModel::set_parameters(const FeatureVector& weights, double bias) {
  weights_ = weights;
  bias_ = bias;
}

}  // namespace gramscore
