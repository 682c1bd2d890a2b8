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

#include "gramscore/gramscore.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "harness/commands.hpp"
#include "harness/config.hpp"
#include "model/regression_model.hpp"
#include "pseudo_label/client.hpp"

struct gs_config {
  gramscore::ExperimentConfig config;
};

struct gs_result {
  std::string summary;
  std::vector<std::string> files;
};

struct gs_model {
  std::unique_ptr<gramscore::RegressionModel> model;
};

namespace {

thread_local std::string last_error;

gs_status fail(gs_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs fn, turning exceptions into status codes. The numeric values of
// gramscore::ErrorCode and gs_status agree.
template <typename Fn>
gs_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return GS_OK;
  } catch (const gramscore::Error& e) {
    return fail(static_cast<gs_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GS_ERR_INTERNAL, "unknown error");
  }
}

using Command = gramscore::CommandResult (*)(const gramscore::ExperimentConfig&, const gramscore::LogSink&);

gs_status run(Command command, const gs_config* config, gs_log_fn log, void* user_data, gs_result** out) {
  if (out) *out = nullptr;
  if (!config) return fail(GS_ERR_INVALID_ARGUMENT, "config is NULL");
  auto result = std::make_unique<gs_result>();
  gramscore::LogSink sink = [&](std::string_view line) {
    if (!log) return;
    const std::string s(line);
    log(s.c_str(), user_data);
  };
  const gs_status status = guarded([&] {
    gramscore::CommandResult r = command(config->config, sink);
    result->summary = std::move(r.summary);
    result->files = std::move(r.files);
  });
  if (status != GS_OK) result->summary = last_error;
  if (out) *out = result.release();
  return status;
}

char* copy_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* gs_version(void) { return GRAMSCORE_VERSION; }

const char* gs_last_error(void) { return last_error.c_str(); }

const char* gs_status_name(gs_status status) {
  switch (status) {
    case GS_OK: return "ok";
    case GS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GS_ERR_PARSE: return "parse error";
    case GS_ERR_VALIDATION: return "validation error";
    case GS_ERR_IO: return "i/o error";
    case GS_ERR_CONFIG: return "configuration error";
    case GS_ERR_TRANSPORT: return "transport error";
    case GS_ERR_DIVERGENCE: return "training divergence";
    case GS_ERR_UNDEFINED: return "undefined value";
    case GS_ERR_REJECTION_THRESHOLD: return "rejection threshold exceeded";
    case GS_ERR_OUT_OF_RANGE: return "out of range";
    case GS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gs_env_endpoint(void) { return gramscore::kEndpointEnv; }
const char* gs_env_api_key(void) { return gramscore::kApiKeyEnv; }
const char* gs_env_model(void) { return gramscore::kModelEnv; }

gs_status gs_config_new(gs_config** out) {
  if (!out) return fail(GS_ERR_INVALID_ARGUMENT, "out is NULL");
  *out = nullptr;
  return guarded([&] { *out = new gs_config(); });
}

gs_status gs_config_load(const char* path, gs_config** out) {
  if (!out || !path) return fail(GS_ERR_INVALID_ARGUMENT, "path and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new gs_config{gramscore::load_config(path)}; });
}

gs_status gs_config_set(gs_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(GS_ERR_INVALID_ARGUMENT, "config, key and value must not be NULL");
  return guarded([&] { config->config.set(key, value); });
}

gs_status gs_config_to_text(const gs_config* config, char** out) {
  if (!config || !out) return fail(GS_ERR_INVALID_ARGUMENT, "config and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = copy_string(config->config.to_text()); });
}

void gs_config_free(gs_config* config) { delete config; }

void gs_string_free(char* s) { std::free(s); }

gs_status gs_cmd_gen_synthetic(const gs_config* c, gs_log_fn log, void* user, gs_result** out) {
  return run(gramscore::cmd_gen_synthetic, c, log, user, out);
}
gs_status gs_cmd_pseudolabel(const gs_config* c, gs_log_fn log, void* user, gs_result** out) {
  return run(gramscore::cmd_pseudolabel, c, log, user, out);
}
gs_status gs_cmd_train(const gs_config* c, gs_log_fn log, void* user, gs_result** out) {
  return run(gramscore::cmd_train, c, log, user, out);
}
gs_status gs_cmd_evaluate(const gs_config* c, gs_log_fn log, void* user, gs_result** out) {
  return run(gramscore::cmd_evaluate, c, log, user, out);
}
gs_status gs_cmd_alpha_sweep(const gs_config* c, gs_log_fn log, void* user, gs_result** out) {
  return run(gramscore::cmd_alpha_sweep, c, log, user, out);
}
gs_status gs_cmd_baselines(const gs_config* c, gs_log_fn log, void* user, gs_result** out) {
  return run(gramscore::cmd_baselines, c, log, user, out);
}
gs_status gs_cmd_inject_errors(const gs_config* c, gs_log_fn log, void* user, gs_result** out) {
  return run(gramscore::cmd_inject_errors, c, log, user, out);
}
gs_status gs_cmd_robustness_report(const gs_config* c, gs_log_fn log, void* user, gs_result** out) {
  return run(gramscore::cmd_robustness, c, log, user, out);
}

const char* gs_result_summary(const gs_result* result) { return result ? result->summary.c_str() : ""; }

size_t gs_result_file_count(const gs_result* result) { return result ? result->files.size() : 0; }

const char* gs_result_file(const gs_result* result, size_t index) {
  if (!result || index >= result->files.size()) return nullptr;
  return result->files[index].c_str();
}

void gs_result_free(gs_result* result) { delete result; }

gs_status gs_model_load(const char* path, gs_model** out) {
  if (!path || !out) return fail(GS_ERR_INVALID_ARGUMENT, "path and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new gs_model{gramscore::load_model(path)}; });
}

gs_status gs_model_predict(const gs_model* model, const char* text, double* score) {
  if (!model || !text || !score) return fail(GS_ERR_INVALID_ARGUMENT, "model, text and score must not be NULL");
  return guarded([&] { *score = model->model->predict(text); });
}

void gs_model_free(gs_model* model) { delete model; }

}  // extern "C"
