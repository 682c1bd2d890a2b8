/*
 * Copyright 2026 The gramscore Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "gramscore/gramscore.h"

static int failures = 0;

#define EXPECT(cond)                                           \
  do {                                                         \
    if (!(cond)) {                                             \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                              \
    }                                                          \
  } while (0)

static void count_lines(const char* line, void* user) {
  (void)line;
  ++*(int*)user;
}

int main(int argc, char** argv) {
  const char* out = argc > 1 ? argv[1] : "capi_out";
  gs_config* config = NULL;
  gs_result* result = NULL;
  char* text = NULL;
  int lines = 0;
  char buf[512];

  EXPECT(strlen(gs_version()) > 0);
  EXPECT(strcmp(gs_env_api_key(), "GRAMSCORE_LLM_API_KEY") == 0);
  EXPECT(gs_config_new(NULL) == GS_ERR_INVALID_ARGUMENT);
  EXPECT(strlen(gs_last_error()) > 0);
  EXPECT(gs_config_load("/nonexistent/gramscore.conf", &config) == GS_ERR_IO);
  EXPECT(config == NULL);

  EXPECT(gs_config_new(&config) == GS_OK);
  EXPECT(gs_config_set(config, "no_such_key", "1") == GS_ERR_CONFIG);
  EXPECT(strstr(gs_last_error(), "no_such_key") != NULL);
  EXPECT(gs_config_set(config, "api_key", "x") == GS_ERR_CONFIG);
  EXPECT(gs_config_set(config, "synthetic_train_size", "30") == GS_OK);
  EXPECT(gs_config_set(config, "synthetic_test_size", "10") == GS_OK);
  snprintf(buf, sizeof buf, "%s/data", out);
  EXPECT(gs_config_set(config, "out_dir", buf) == GS_OK);
  EXPECT(gs_config_set(config, "overwrite", "true") == GS_OK);
  EXPECT(gs_config_to_text(config, &text) == GS_OK);
  EXPECT(text != NULL && strstr(text, "synthetic_train_size=30\n") != NULL);
  gs_string_free(text);

  EXPECT(gs_cmd_gen_synthetic(config, count_lines, &lines, &result) == GS_OK);
  EXPECT(lines > 0);
  EXPECT(gs_result_file_count(result) == 4);
  EXPECT(strstr(gs_result_file(result, 0), "train.jsonl") != NULL);
  EXPECT(gs_result_file(result, 99) == NULL);
  EXPECT(strstr(gs_result_summary(result), "30") != NULL);
  gs_result_free(result);

  /* evaluate without a model path is a configuration error */
  EXPECT(gs_cmd_evaluate(config, NULL, NULL, &result) == GS_ERR_CONFIG);
  EXPECT(result != NULL && strlen(gs_result_summary(result)) > 0);
  gs_result_free(result);
  EXPECT(gs_cmd_train(NULL, NULL, NULL, NULL) == GS_ERR_INVALID_ARGUMENT);
  EXPECT(strcmp(gs_status_name(GS_ERR_REJECTION_THRESHOLD), "rejection threshold exceeded") == 0);

  gs_config_free(config);
  if (failures) fprintf(stderr, "%d check(s) failed\n", failures);
  return failures ? 1 : 0;
}
