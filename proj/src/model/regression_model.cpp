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

#include "model/regression_model.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/strings.hpp"
#include "model/encoder_model.hpp"
#include "model/featurizer_model.hpp"

namespace gramscore {

namespace {

constexpr const char* kFormat = "gramscore-model";
constexpr int kFormatVersion = 1;

}  // namespace

std::vector<double> RegressionModel::predict_batch(std::span<const std::string> texts) const {
  std::vector<double> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(predict(t));
  return out;
}

void check_batch(std::span<const WeightedExample> batch) {
  if (batch.empty()) throw ValidationError("train_step requires a non-empty batch");
  for (const auto& ex : batch) {
    if (!(ex.weight >= 0.0)) throw ValidationError("sample weights must be non-negative");
  }
}

double weighted_batch_loss(std::span<const WeightedExample> batch, std::span<const double> predictions) {
  check_batch(batch);
  if (predictions.size() != batch.size()) throw ValidationError("prediction count does not match batch");
  double sum = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double r = predictions[i] - batch[i].target;
    sum += batch[i].weight * r * r;
  }
  return sum / static_cast<double>(batch.size());
}

std::unique_ptr<RegressionModel> make_model(const std::string& backend, std::uint64_t seed,
                                            const nlohmann::json& options) {
  if (backend == "featurizer") {
    FeaturizerConfig c;
    c.seed = seed;
    c.init_scale = options.value("init_scale", c.init_scale);
    c.init_bias = options.value("init_bias", c.init_bias);
    c.base_learning_rate = options.value("base_learning_rate", c.base_learning_rate);
    return std::make_unique<FeaturizerModel>(c);
  }
  if (backend == "encoder") {
    EncoderConfig c = encoder_config_from_json(options);
    c.seed = seed;
    return std::make_unique<EncoderModel>(c);
  }
  throw ConfigError("unknown model backend '" + backend + "' (expected featurizer or encoder)");
}

std::unique_ptr<RegressionModel> model_from_snapshot(const ModelSnapshot& snapshot) {
  const std::string backend = snapshot.value("backend", "");
  std::unique_ptr<RegressionModel> model;
  if (backend == "featurizer") {
    model = std::make_unique<FeaturizerModel>();
  } else if (backend == "encoder") {
    EncoderConfig c = encoder_config_from_json(snapshot.at("config"));
    c.encoder_name = "hashed-transformer-tiny";  // weights come from the snapshot
    model = std::make_unique<EncoderModel>(c);
  } else {
    throw ValidationError("snapshot names unknown backend '" + backend + "'");
  }
  model->restore(snapshot);
  return model;
}

void save_model(const RegressionModel& model, const std::string& path, const nlohmann::json& run_metadata) {
  nlohmann::json doc;
  doc["format"] = kFormat;
  doc["format_version"] = kFormatVersion;
  doc["model"] = model.snapshot();
  doc["run"] = run_metadata;
  write_file(path, doc.dump(1) + "\n");
}

std::unique_ptr<RegressionModel> load_model(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file " + path + " is not valid JSON: " + e.what());
  }
  if (doc.value("format", "") != kFormat) throw ValidationError(path + " is not a gramscore model file");
  if (doc.value("format_version", 0) != kFormatVersion)
    throw ValidationError(path + " has an unsupported model format version");
  try {
    return model_from_snapshot(doc.at("model"));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("model file " + path + " is malformed: " + e.what());
  }
}

}  // namespace gramscore
