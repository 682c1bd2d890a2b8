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

// gramscore command line front end. Talks to the library only through the C
// interface in gramscore/gramscore.h.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gramscore/gramscore.h"

namespace {

using CommandFn = gs_status (*)(const gs_config*, gs_log_fn, void*, gs_result**);

struct Subcommand {
  const char* name;
  const char* help;
  CommandFn fn;
};

const Subcommand kSubcommands[] = {
    {"gen-synthetic", "Generate the bundled synthetic corpus (train.jsonl, test.jsonl).", gs_cmd_gen_synthetic},
    {"pseudolabel", "Score an unlabeled training set with the LLM client.", gs_cmd_pseudolabel},
    {"train", "Train a scorer on a pseudo-labeled training set.", gs_cmd_train},
    {"evaluate", "Score a rated test set with a trained model.", gs_cmd_evaluate},
    {"alpha-sweep", "Train and evaluate once per alpha in alpha_grid.", gs_cmd_alpha_sweep},
    {"baselines", "Compare the configured alpha with alpha 1.0 and direct LLM scoring.", gs_cmd_baselines},
    {"inject-errors", "Build a grammatical-error suite from high-scoring test samples.", gs_cmd_inject_errors},
    {"robustness-report", "Measure how predictions move as injected errors increase.", gs_cmd_robustness_report},
};

void print_line(const char* line, void* quiet) {
  if (!*static_cast<bool*>(quiet)) std::fprintf(stderr, "%s\n", line);
}

std::string env_help() {
  std::string s = "Environment (live LLM backend only; never read from config files):\n";
  s += std::string("  ") + gs_env_endpoint() + "  chat-completions endpoint URL\n";
  s += std::string("  ") + gs_env_api_key() + "  API key sent as a bearer token\n";
  s += std::string("  ") + gs_env_model() + "  model name (optional, default gpt-4)\n";
  s += "\nExit status is 0 on success, otherwise the gs_status code (9 when the\n"
       "pseudo-label rejection rate exceeds max_rejection_rate).";
  return s;
}

int report(gs_status status, const char* context) {
  std::fprintf(stderr, "gramscore: %s: %s: %s\n", context, gs_status_name(status), gs_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gramscore: LLM pseudo-labeled grammar scoring experiments"};
  app.footer(env_help());
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", gs_version());

  std::string config_path, out_dir, llm_backend, model_backend;
  std::string train_path, test_path, model_path, suite_path, cache_path, rubric_path, rounding;
  std::optional<unsigned long long> seed, epochs;
  std::optional<double> alpha;
  std::vector<std::string> overrides;
  bool overwrite = false, quiet = false, print_config = false;

  app.add_option("--config", config_path, "Experiment config file (key=value lines)")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Base random seed");
  app.add_option("--out", out_dir, "Output directory (default: out)");
  app.add_option("--backend", llm_backend, "LLM client for pseudo-labels and the unsupervised baseline")
      ->check(CLI::IsMember({"live", "mock"}));
  app.add_flag("--overwrite", overwrite, "Allow writing into a non-empty output directory");
  app.add_option("--train", train_path, "Training set JSONL");
  app.add_option("--test", test_path, "Rated test set JSONL");
  app.add_option("--model", model_path, "Model snapshot (model.json)");
  app.add_option("--suite", suite_path, "Error suite JSONL from inject-errors");
  app.add_option("--cache", cache_path, "Pseudo-label cache JSONL (default: <out>/pseudo_label_cache.jsonl)");
  app.add_option("--rubric", rubric_path, "Rubric text file (default: built-in rubric)");
  app.add_option("--alpha", alpha, "Clean fraction kept each epoch, in [0, 1]");
  app.add_option("--epochs", epochs, "Training epochs");
  app.add_option("--model-backend", model_backend, "Scorer backend")->check(CLI::IsMember({"featurizer", "encoder"}));
  app.add_option("--rounding", rounding, "Rounding policy for agreement metrics");
  app.add_option("--set", overrides, "Override any config key (key=value); repeatable");
  app.add_flag("--print-config", print_config, "Print the effective config and exit without running");
  app.add_flag("-q,--quiet", quiet, "Only print the final summary");

  std::map<std::string, CommandFn> commands;
  for (const auto& sub : kSubcommands) {
    app.add_subcommand(sub.name, sub.help);
    commands[sub.name] = sub.fn;
  }

  CLI11_PARSE(app, argc, argv);

  gs_config* config = nullptr;
  gs_status status = config_path.empty() ? gs_config_new(&config) : gs_config_load(config_path.c_str(), &config);
  if (status != GS_OK) return report(status, "loading config");

  std::vector<std::pair<std::string, std::string>> settings;
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "gramscore: --set expects key=value, got '%s'\n", kv.c_str());
      gs_config_free(config);
      return GS_ERR_INVALID_ARGUMENT;
    }
    settings.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  auto add = [&](const char* key, const std::string& value) {
    if (!value.empty()) settings.emplace_back(key, value);
  };
  if (seed) add("seed", std::to_string(*seed));
  if (epochs) add("epochs", std::to_string(*epochs));
  if (alpha) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", *alpha);
    add("alpha", buf);
  }
  add("out_dir", out_dir);
  add("llm_backend", llm_backend);
  add("backend", model_backend);
  add("train_path", train_path);
  add("test_path", test_path);
  add("model_path", model_path);
  add("suite_path", suite_path);
  add("cache_path", cache_path);
  add("rubric_path", rubric_path);
  add("rounding_policy", rounding);
  if (overwrite) add("overwrite", "true");
  for (const auto& [key, value] : settings) {
    status = gs_config_set(config, key.c_str(), value.c_str());
    if (status != GS_OK) {
      gs_config_free(config);
      return report(status, ("setting " + key).c_str());
    }
  }

  if (print_config) {
    char* text = nullptr;
    status = gs_config_to_text(config, &text);
    if (status == GS_OK) std::fputs(text, stdout);
    gs_string_free(text);
    gs_config_free(config);
    return status == GS_OK ? 0 : report(status, "printing config");
  }

  const std::string name = app.get_subcommands().front()->get_name();
  gs_result* result = nullptr;
  status = commands.at(name)(config, print_line, &quiet, &result);
  if (status == GS_OK) {
    if (quiet) std::printf("%s\n", gs_result_summary(result));
    for (std::size_t i = 0; i < gs_result_file_count(result); ++i) std::printf("%s\n", gs_result_file(result, i));
  }
  gs_result_free(result);
  gs_config_free(config);
  return status == GS_OK ? 0 : report(status, name.c_str());
}
