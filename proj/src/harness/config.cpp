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

#include "harness/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <map>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"
#include "pseudo_label/client.hpp"

namespace gramscore {

namespace {

double to_number(const std::string& key, const std::string& value) {
  const std::string v(trim(value));
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
    throw ConfigError("config key '" + key + "': '" + value + "' is not a number");
  return d;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  const std::string v(trim(value));
  char* end = nullptr;
  errno = 0;
  const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || v[0] == '-' || end != v.c_str() + v.size() || errno == ERANGE)
    throw ConfigError("config key '" + key + "': '" + value + "' is not a non-negative integer");
  return u;
}

bool to_bool(const std::string& key, const std::string& value) {
  const std::string v = to_lower(trim(value));
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': '" + value + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    const auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<double> to_numbers(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(to_number(key, item));
  if (out.empty()) throw ConfigError("config key '" + key + "' needs at least one value");
  return out;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (double d : v) out += (out.empty() ? "" : ",") + format_score(d);
  return out;
}

bool looks_like_credential(const std::string& key) {
  const std::string k = to_lower(key);
  for (const char* word : {"key", "token", "secret", "password", "endpoint", "url"})
    if (k.find(word) != std::string::npos) return true;
  return false;
}

}  // namespace

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

ExperimentConfig::ExperimentConfig() : alpha_grid(default_alpha_grid()) {
  error_types.assign(kAllErrorTypes.begin(), kAllErrorTypes.end());
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key(trim(raw_key));
  const std::string v(trim(value));
  if (key == "alpha") train.alpha = to_number(key, v);
  else if (key == "epochs") train.epochs = to_unsigned(key, v);
  else if (key == "batch_size") train.batch_size = to_unsigned(key, v);
  else if (key == "learning_rate") {
    if (to_lower(v) == "auto") train.learning_rate.reset();
    else train.learning_rate = to_number(key, v);
  }
  else if (key == "seed") train.seed = to_unsigned(key, v);
  else if (key == "shuffle") train.shuffle = to_bool(key, v);
  else if (key == "backend") backend = v;
  else if (key == "encoder_name") encoder_name = v;
  else if (key == "max_tokens") max_tokens = to_unsigned(key, v);
  else if (key == "pooling") pooling = v;
  else if (key == "llm_backend") llm_backend = v;
  else if (key == "retries") retries = to_unsigned(key, v);
  else if (key == "concurrency") concurrency = to_unsigned(key, v);
  else if (key == "max_rejection_rate") max_rejection_rate = to_number(key, v);
  else if (key == "mock_noise_rate") mock_noise_rate = to_number(key, v);
  else if (key == "mock_noise_seed") mock_noise_seed = to_unsigned(key, v);
  else if (key == "rounding_policy") rounding = parse_rounding_policy(v);
  else if (key == "alpha_grid") alpha_grid = to_numbers(key, v);
  else if (key == "score_threshold") score_threshold = to_number(key, v);
  else if (key == "intensities") intensities = to_numbers(key, v);
  else if (key == "error_types") {
    error_types.clear();
    for (const auto& name : split_list(v)) {
      if (name == "all") error_types.assign(kAllErrorTypes.begin(), kAllErrorTypes.end());
      else error_types.push_back(parse_error_type(name));
    }
  }
  else if (key == "impact_threshold") impact_threshold = to_number(key, v);
  else if (key == "train_path") train_path = v;
  else if (key == "test_path") test_path = v;
  else if (key == "model_path") model_path = v;
  else if (key == "suite_path") suite_path = v;
  else if (key == "cache_path") cache_path = v;
  else if (key == "rubric_path") rubric_path = v;
  else if (key == "out_dir") out_dir = v;
  else if (key == "overwrite") overwrite = to_bool(key, v);
  else if (key == "synthetic_train_size") synthetic_train_size = to_unsigned(key, v);
  else if (key == "synthetic_test_size") synthetic_test_size = to_unsigned(key, v);
  else if (looks_like_credential(key))
    throw ConfigError("config key '" + key + "' looks like a credential; the live client reads " +
                      std::string(kEndpointEnv) + " and " + kApiKeyEnv + " from the environment instead");
  else
    throw ConfigError("unknown config key '" + key + "'");
}

void ExperimentConfig::validate() const {
  train.validate();
  if (backend != "featurizer" && backend != "encoder")
    throw ConfigError("backend must be featurizer or encoder, got '" + backend + "'");
  if (llm_backend != "mock" && llm_backend != "live")
    throw ConfigError("llm_backend must be mock or live, got '" + llm_backend + "'");
  if (retries == 0) throw ConfigError("retries must be at least 1");
  if (concurrency == 0) throw ConfigError("concurrency must be at least 1");
  if (!(max_rejection_rate >= 0.0 && max_rejection_rate <= 1.0))
    throw ConfigError("max_rejection_rate must lie in [0, 1]");
  if (!(mock_noise_rate >= 0.0 && mock_noise_rate <= 1.0)) throw ConfigError("mock_noise_rate must lie in [0, 1]");
  for (double a : alpha_grid)
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha_grid values must lie in [0, 1]");
  for (double x : intensities)
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("intensities must lie in [0, 1]");
  if (error_types.empty()) throw ConfigError("error_types must name at least one type");
  if (!(score_threshold >= 1.0 && score_threshold <= 5.0)) throw ConfigError("score_threshold must lie in [1, 5]");
  if (!(impact_threshold >= 0.0)) throw ConfigError("impact_threshold must be non-negative");
  if (out_dir.empty()) throw ConfigError("out_dir must not be empty");
}

std::string ExperimentConfig::to_text() const {
  std::map<std::string, std::string> kv;
  kv["alpha"] = format_score(train.alpha);
  kv["epochs"] = std::to_string(train.epochs);
  kv["batch_size"] = std::to_string(train.batch_size);
  kv["learning_rate"] = train.learning_rate ? format_score(*train.learning_rate) : "auto";
  kv["seed"] = std::to_string(train.seed);
  kv["shuffle"] = train.shuffle ? "true" : "false";
  kv["backend"] = backend;
  kv["encoder_name"] = encoder_name;
  kv["max_tokens"] = std::to_string(max_tokens);
  kv["pooling"] = pooling;
  kv["llm_backend"] = llm_backend;
  kv["retries"] = std::to_string(retries);
  kv["concurrency"] = std::to_string(concurrency);
  kv["max_rejection_rate"] = format_score(max_rejection_rate);
  kv["mock_noise_rate"] = format_score(mock_noise_rate);
  kv["mock_noise_seed"] = std::to_string(mock_noise_seed);
  kv["rounding_policy"] = std::string(to_string(rounding));
  kv["alpha_grid"] = join_numbers(alpha_grid);
  kv["score_threshold"] = format_score(score_threshold);
  kv["intensities"] = join_numbers(intensities);
  std::string types;
  for (ErrorType t : error_types) types += (types.empty() ? "" : ",") + std::string(to_string(t));
  kv["error_types"] = types;
  kv["impact_threshold"] = format_score(impact_threshold);
  kv["train_path"] = train_path;
  kv["test_path"] = test_path;
  kv["model_path"] = model_path;
  kv["suite_path"] = suite_path;
  kv["cache_path"] = cache_path;
  kv["rubric_path"] = rubric_path;
  kv["out_dir"] = out_dir;
  kv["overwrite"] = overwrite ? "true" : "false";
  kv["synthetic_train_size"] = std::to_string(synthetic_train_size);
  kv["synthetic_test_size"] = std::to_string(synthetic_test_size);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string ExperimentConfig::hash() const {
  ExperimentConfig copy = *this;
  copy.out_dir = "-";
  copy.overwrite = false;
  return hex64(fnv1a64(copy.to_text()));
}

nlohmann::json ExperimentConfig::model_options() const {
  if (backend == "encoder") return {{"encoder_name", encoder_name}, {"max_tokens", max_tokens}, {"pooling", pooling}};
  return nlohmann::json::object();
}

std::string ExperimentConfig::effective_cache_path() const {
  return cache_path.empty() ? out_dir + "/pseudo_label_cache.jsonl" : cache_path;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    try {
      config.set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

}  // namespace gramscore
