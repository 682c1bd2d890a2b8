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

#ifndef GRAMSCORE_HARNESS_CONFIG_HPP
#define GRAMSCORE_HARNESS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "error_injection/error_type.hpp"
#include "metrics/metrics.hpp"
#include "trainer/trainer.hpp"

namespace gramscore {

// Everything a harness command needs. Loaded from a flat key=value file
// (one pair per line, '#' starts a comment) and then overridden by command
// line flags. LLM credentials are never part of it.
struct ExperimentConfig {
  // Inputs and outputs.
  std::string train_path;
  std::string test_path;
  std::string model_path;
  std::string suite_path;
  std::string cache_path;  // empty: <out_dir>/pseudo_label_cache.jsonl
  std::string rubric_path;  // empty: built-in rubric
  std::string out_dir = "out";
  bool overwrite = false;

  // Training.
  TrainConfig train;
  std::string backend = "featurizer";  // model backend: featurizer | encoder
  std::string encoder_name = "hashed-transformer-tiny";
  std::size_t max_tokens = 192;
  std::string pooling = "mean";

  // Pseudo-labeling.
  std::string llm_backend = "mock";  // mock | live
  std::size_t retries = 3;
  std::size_t concurrency = 1;
  double max_rejection_rate = 0.10;
  double mock_noise_rate = 0.0;
  std::uint64_t mock_noise_seed = 0;

  // Evaluation and sweeps.
  RoundingPolicy rounding = RoundingPolicy::kNearestIntegerClamped;
  std::vector<double> alpha_grid;

  // Error injection and robustness.
  double score_threshold = 4.5;
  std::vector<double> intensities = {0.0, 0.05, 0.1, 0.2, 0.3};
  std::vector<ErrorType> error_types;
  double impact_threshold = 0.25;

  // Synthetic corpus.
  std::size_t synthetic_train_size = 2000;
  std::size_t synthetic_test_size = 500;

  ExperimentConfig();

  // Applies one key=value pair. Throws ConfigError on unknown keys, bad
  // values, and any key that looks like a credential.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  // Canonical key=value text, sorted by key.
  std::string to_text() const;
  // Hash of to_text() without out_dir and overwrite, so the same experiment
  // run into two directories hashes the same.
  std::string hash() const;
  nlohmann::json model_options() const;
  std::string effective_cache_path() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

std::vector<double> default_alpha_grid();

}  // namespace gramscore

#endif  // GRAMSCORE_HARNESS_CONFIG_HPP
