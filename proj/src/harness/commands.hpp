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

#ifndef GRAMSCORE_HARNESS_COMMANDS_HPP
#define GRAMSCORE_HARNESS_COMMANDS_HPP

#include <memory>
#include <string>
#include <vector>

#include "harness/config.hpp"
#include "harness/output.hpp"
#include "pseudo_label/client.hpp"
#include "pseudo_label/prompt.hpp"

namespace gramscore {

struct CommandResult {
  std::vector<std::string> files;  // everything written, in order
  std::string summary;             // one or more lines for the console
};

// Every command prepares config.out_dir first (see prepare_output_dir) and
// throws gramscore::Error subclasses on failure.

// Writes train.jsonl (unlabeled), test.jsonl (rated with the true score) and
// synthetic_truth.csv.
CommandResult cmd_gen_synthetic(const ExperimentConfig& config, const LogSink& log);

// Labels config.train_path into train_labeled.jsonl and rejections.csv.
// Throws an Error with code kRejectionThreshold (after writing both files)
// when more than max_rejection_rate of the samples were rejected.
CommandResult cmd_pseudolabel(const ExperimentConfig& config, const LogSink& log);

// Trains on the pseudo-labeled config.train_path; writes model.json,
// history.csv and loss_matrix.csv. Samples without a pseudo label are
// dropped with a log line.
CommandResult cmd_train(const ExperimentConfig& config, const LogSink& log);

// Scores config.test_path with config.model_path; writes evaluation.csv.
CommandResult cmd_evaluate(const ExperimentConfig& config, const LogSink& log);

// One from-scratch train and evaluate cycle per alpha in config.alpha_grid,
// all with config.train.seed. Writes alpha_sweep.csv, per-alpha
// subdirectories, and rmse/qwk plots. A failing alpha is recorded in its row.
CommandResult cmd_alpha_sweep(const ExperimentConfig& config, const LogSink& log);

// proposed (config alpha), supervised_baseline (alpha 1.0) and
// unsupervised_baseline (the LLM client scoring the test set directly).
CommandResult cmd_baselines(const ExperimentConfig& config, const LogSink& log);

// Builds the corruption suite from config.test_path; writes suite.jsonl and
// suite_summary.csv.
CommandResult cmd_inject_errors(const ExperimentConfig& config, const LogSink& log);

// Robustness table for config.model_path over config.suite_path, or over a
// suite built from config.test_path when no suite path is set.
CommandResult cmd_robustness(const ExperimentConfig& config, const LogSink& log);

std::unique_ptr<LLMClient> make_llm_client(const ExperimentConfig& config);
RubricPrompt load_rubric(const ExperimentConfig& config);

}  // namespace gramscore

#endif  // GRAMSCORE_HARNESS_COMMANDS_HPP
