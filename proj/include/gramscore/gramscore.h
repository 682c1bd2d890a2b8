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

/* C interface to gramscore. All functions return a gs_status; on failure
 * gs_last_error() describes the problem until the next call on the same
 * thread. Handles are opaque and owned by the caller. */

#ifndef GRAMSCORE_GRAMSCORE_H
#define GRAMSCORE_GRAMSCORE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GS_API __declspec(dllexport)
#else
#define GS_API __attribute__((visibility("default")))
#endif

typedef enum gs_status {
  GS_OK = 0,
  GS_ERR_INVALID_ARGUMENT = 1,
  GS_ERR_PARSE = 2,
  GS_ERR_VALIDATION = 3,
  GS_ERR_IO = 4,
  GS_ERR_CONFIG = 5,
  GS_ERR_TRANSPORT = 6,
  GS_ERR_DIVERGENCE = 7,
  GS_ERR_UNDEFINED = 8,
  GS_ERR_REJECTION_THRESHOLD = 9,
  GS_ERR_OUT_OF_RANGE = 10,
  GS_ERR_INTERNAL = 99
} gs_status;

typedef struct gs_config gs_config;
typedef struct gs_result gs_result;
typedef struct gs_model gs_model;

/* Receives one progress line (no trailing newline). */
typedef void (*gs_log_fn)(const char* line, void* user_data);

GS_API const char* gs_version(void);
GS_API const char* gs_last_error(void);
GS_API const char* gs_status_name(gs_status status);

/* Names of the environment variables the live LLM client reads. */
GS_API const char* gs_env_endpoint(void);
GS_API const char* gs_env_api_key(void);
GS_API const char* gs_env_model(void);

/* Configuration: defaults, a key=value file, then per-key overrides. */
GS_API gs_status gs_config_new(gs_config** out);
GS_API gs_status gs_config_load(const char* path, gs_config** out);
GS_API gs_status gs_config_set(gs_config* config, const char* key, const char* value);
/* Canonical sorted key=value text; free with gs_string_free. */
GS_API gs_status gs_config_to_text(const gs_config* config, char** out);
GS_API void gs_config_free(gs_config* config);
GS_API void gs_string_free(char* s);

/* Commands. `log` may be NULL, and so may `out` when the result is not
 * needed. Otherwise `out` always receives a result handle; after a failure
 * its summary repeats the error message. pseudolabel writes its outputs
 * before returning GS_ERR_REJECTION_THRESHOLD. */
GS_API gs_status gs_cmd_gen_synthetic(const gs_config* config, gs_log_fn log, void* user_data, gs_result** out);
GS_API gs_status gs_cmd_pseudolabel(const gs_config* config, gs_log_fn log, void* user_data, gs_result** out);
GS_API gs_status gs_cmd_train(const gs_config* config, gs_log_fn log, void* user_data, gs_result** out);
GS_API gs_status gs_cmd_evaluate(const gs_config* config, gs_log_fn log, void* user_data, gs_result** out);
GS_API gs_status gs_cmd_alpha_sweep(const gs_config* config, gs_log_fn log, void* user_data, gs_result** out);
GS_API gs_status gs_cmd_baselines(const gs_config* config, gs_log_fn log, void* user_data, gs_result** out);
GS_API gs_status gs_cmd_inject_errors(const gs_config* config, gs_log_fn log, void* user_data, gs_result** out);
GS_API gs_status gs_cmd_robustness_report(const gs_config* config, gs_log_fn log, void* user_data, gs_result** out);

GS_API const char* gs_result_summary(const gs_result* result);
GS_API size_t gs_result_file_count(const gs_result* result);
GS_API const char* gs_result_file(const gs_result* result, size_t index);
GS_API void gs_result_free(gs_result* result);

/* Trained model snapshots. */
GS_API gs_status gs_model_load(const char* path, gs_model** out);
GS_API gs_status gs_model_predict(const gs_model* model, const char* text, double* score);
GS_API void gs_model_free(gs_model* model);

#ifdef __cplusplus
}
#endif

#endif /* GRAMSCORE_GRAMSCORE_H */
