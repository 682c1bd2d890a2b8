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

#include "harness/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

#include "core/error.hpp"
#include "core/strings.hpp"
#include "dataset/dataset.hpp"
#include "error_injection/robustness.hpp"
#include "error_injection/suite.hpp"
#include "harness/plot.hpp"
#include "harness/synthetic.hpp"
#include "metrics/metrics.hpp"
#include "model/regression_model.hpp"
#include "pseudo_label/cache.hpp"
#include "pseudo_label/labeler.hpp"
#include "trainer/trainer.hpp"

namespace gramscore {

namespace {

// Short form for alphas, intensities and thresholds in logs and tables.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * fraction);
  return buf;
}

void require_path(const std::string& path, const char* what) {
  if (path.empty()) throw ConfigError(std::string("no ") + what + " given");
}

Dataset load_labeled_train(const ExperimentConfig& config, const LogSink& log) {
  require_path(config.train_path, "training set (train_path / --train)");
  const Dataset all = load_dataset(config.train_path, false, SplitTag::kTrain);
  std::vector<Record> kept;
  for (const Record& r : all.records())
    if (r.pseudo_score()) kept.push_back(r);
  if (kept.size() != all.size())
    log("dropped " + std::to_string(all.size() - kept.size()) + " of " + std::to_string(all.size()) +
        " training samples without a pseudo label");
  if (kept.empty()) throw ValidationError(config.train_path + " has no pseudo-labeled samples; run pseudolabel first");
  return Dataset(std::move(kept), SplitTag::kTrain);
}

Dataset load_test(const ExperimentConfig& config) {
  require_path(config.test_path, "test set (test_path / --test)");
  return load_dataset(config.test_path, true, SplitTag::kTest);
}

nlohmann::json run_metadata(const ExperimentConfig& config, const std::string& command, double alpha,
                            double learning_rate) {
  return {{"command", command},          {"config_hash", config.hash()}, {"seed", config.train.seed},
          {"alpha", alpha},              {"epochs", config.train.epochs}, {"batch_size", config.train.batch_size},
          {"learning_rate", learning_rate}, {"version", GRAMSCORE_VERSION}};
}

struct TrainedRun {
  std::unique_ptr<RegressionModel> model;
  TrainHistory history;
};

TrainedRun train_with_alpha(const ExperimentConfig& config, const Dataset& train_set, double alpha,
                            const LogSink& log) {
  TrainConfig tc = config.train;
  tc.alpha = alpha;
  TrainedRun run;
  run.model = make_model(config.backend, tc.seed, config.model_options());
  TrainCallbacks callbacks;
  callbacks.on_epoch = [&](const EpochRecord& rec, const RegressionModel&) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "alpha %s epoch %zu: weighted loss %.6f, clean set %zu, churn %.4f",
                  num(alpha).c_str(), rec.epoch, rec.mean_weighted_loss, rec.clean_set_size,
                  rec.churn_fraction);
    log(buf);
    if (rec.degenerate)
      log("warning: alpha " + num(alpha) + " selects no samples; epoch " + std::to_string(rec.epoch) +
          " keeps the previous weights");
  };
  run.history = train(*run.model, train_set, tc, callbacks);
  return run;
}

std::string metric_or_blank(const std::optional<double>& v) { return v ? format_fixed(*v) : ""; }

std::string alpha_dir_name(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "alpha_%.2f", alpha);
  return buf;
}

std::string baseline_row(const std::string& method, const AgreementReport& r) {
  return method + "," + report_csv_row(r) + "\n";
}

}  // namespace

std::unique_ptr<LLMClient> make_llm_client(const ExperimentConfig& config) {
  if (config.llm_backend == "live") return std::make_unique<LiveClient>(LiveClient::config_from_environment());
  if (config.llm_backend == "mock") return std::make_unique<MockClient>(config.mock_noise_seed, config.mock_noise_rate);
  throw ConfigError("llm_backend must be mock or live, got '" + config.llm_backend + "'");
}

RubricPrompt load_rubric(const ExperimentConfig& config) {
  return config.rubric_path.empty() ? RubricPrompt::default_prompt() : RubricPrompt::from_file(config.rubric_path);
}

CommandResult cmd_gen_synthetic(const ExperimentConfig& config, const LogSink& log) {
  config.validate();
  prepare_output_dir(config.out_dir, config.overwrite);
  OutputWriter out(config.out_dir, "gen-synthetic", config);

  SyntheticOptions opts;
  opts.train_size = config.synthetic_train_size;
  opts.test_size = config.synthetic_test_size;
  opts.seed = config.train.seed;
  const SyntheticCorpus corpus = generate_corpus(opts);

  save_dataset(corpus.train, out.path("train.jsonl"));
  save_dataset(corpus.test, out.path("test.jsonl"));
  std::string truth = "split,id,true_score,injected_density,affected_words,word_count,errors\n";
  auto add = [&](const char* split, const std::vector<SyntheticItem>& items) {
    for (const auto& it : items) {
      std::string errors;
      for (const auto& s : it.specs)
        errors += (errors.empty() ? "" : ";") + std::string(to_string(s.type)) + "@" + num(s.intensity);
      truth += std::string(split) + "," + csv_escape(it.sample.id) + "," + format_fixed(it.true_score) + "," +
               format_fixed(it.injected_density) + "," + std::to_string(it.affected_words) + "," +
               std::to_string(it.original_words) + "," + csv_escape(errors) + "\n";
    }
  };
  add("train", corpus.train_items);
  add("test", corpus.test_items);

  CommandResult result;
  result.files = {out.path("train.jsonl"), out.path("test.jsonl")};
  out.write_csv("synthetic_truth.csv", truth);
  for (const auto& f : out.files()) result.files.push_back(f);
  result.summary = "generated " + std::to_string(corpus.train.size()) + " unlabeled training and " +
                   std::to_string(corpus.test.size()) + " rated test samples in " + config.out_dir;
  log(result.summary);
  return result;
}

CommandResult cmd_pseudolabel(const ExperimentConfig& config, const LogSink& log) {
  config.validate();
  require_path(config.train_path, "training set (train_path / --train)");
  // Credentials are checked before any output or call.
  auto client = make_llm_client(config);
  const RubricPrompt rubric = load_rubric(config);
  const Dataset dataset = load_dataset(config.train_path, false, SplitTag::kTrain);
  prepare_output_dir(config.out_dir, config.overwrite);
  OutputWriter out(config.out_dir, "pseudolabel", config);

  PseudoLabelCache cache(config.effective_cache_path());
  LabelingOptions opts;
  opts.retries = config.retries;
  opts.concurrency = config.concurrency;
  const LabelingResult labeled = pseudo_label_dataset(dataset, *client, rubric, opts, cache);

  save_dataset(labeled.dataset, out.path("train_labeled.jsonl"));
  const std::string report = out.write_csv("rejections.csv", rejection_csv(labeled.rejections));

  log("client calls: " + std::to_string(labeled.client_calls) + ", cache hits: " +
      std::to_string(labeled.cache_hits) + " (" + client->model_name() + ", prompt " + rubric.prompt_hash() + ")");
  if (labeled.client_calls == 0 && !dataset.empty()) log("fully cached run: no client calls were made");

  CommandResult result;
  result.files.push_back(out.path("train_labeled.jsonl"));
  for (const auto& f : out.files()) result.files.push_back(f);
  result.summary = "labeled " + std::to_string(dataset.size() - labeled.rejections.size()) + " of " +
                   std::to_string(dataset.size()) + " samples; rejected " +
                   std::to_string(labeled.rejections.size()) + " (" + percent(labeled.rejection_rate()) + ")";
  log(result.summary);
  if (labeled.rejection_rate() > config.max_rejection_rate)
    throw Error(ErrorCode::kRejectionThreshold, "rejection rate " + percent(labeled.rejection_rate()) +
                                                    " exceeds " + percent(config.max_rejection_rate) +
                                                    "; see " + report);
  return result;
}

CommandResult cmd_train(const ExperimentConfig& config, const LogSink& log) {
  config.validate();
  const Dataset train_set = load_labeled_train(config, log);
  prepare_output_dir(config.out_dir, config.overwrite);
  OutputWriter out(config.out_dir, "train", config);

  TrainedRun run;
  try {
    run = train_with_alpha(config, train_set, config.train.alpha, log);
  } catch (const Error& e) {
    throw Error(e.code(), "training on " + config.train_path + " failed: " + e.what());
  }
  const std::string model_path = out.path("model.json");
  save_model(*run.model, model_path,
             run_metadata(config, "train", config.train.alpha, run.history.learning_rate));
  out.write_csv("history.csv", history_csv(run.history));
  out.write_csv("loss_matrix.csv", loss_matrix_csv(run.history, train_set));

  CommandResult result;
  result.files.push_back(model_path);
  for (const auto& f : out.files()) result.files.push_back(f);
  char buf[200];
  std::snprintf(buf, sizeof buf, "trained %s model on %zu samples for %zu epochs (alpha %s, learning rate %g)",
                config.backend.c_str(), train_set.size(), run.history.epochs.size(),
                num(config.train.alpha).c_str(), run.history.learning_rate);
  result.summary = buf;
  if (run.history.any_degenerate()) result.summary += "; warning: degenerate clean-set selection";
  log(result.summary);
  return result;
}

CommandResult cmd_evaluate(const ExperimentConfig& config, const LogSink& log) {
  config.validate();
  require_path(config.model_path, "model snapshot (model_path / --model)");
  const auto model = load_model(config.model_path);
  const Dataset test = load_test(config);
  prepare_output_dir(config.out_dir, config.overwrite);
  OutputWriter out(config.out_dir, "evaluate", config);

  const AgreementReport report = evaluate(*model, test, config.rounding);
  out.write_csv("evaluation.csv", report_csv(report));
  CommandResult result;
  result.files = out.files();
  result.summary = report_text(report);
  if (!result.summary.empty() && result.summary.back() == '\n') result.summary.pop_back();
  log(result.summary);
  return result;
}

CommandResult cmd_alpha_sweep(const ExperimentConfig& config, const LogSink& log) {
  config.validate();
  const Dataset train_set = load_labeled_train(config, log);
  const Dataset test = load_test(config);
  prepare_output_dir(config.out_dir, config.overwrite);
  OutputWriter out(config.out_dir, "alpha-sweep", config);

  std::string csv = "alpha,qwk,plcc,srcc,rmse,degenerate,error\n";
  PlotSeries rmse_series{"rmse", {}, {}}, qwk_series{"qwk", {}, {}};
  std::size_t failures = 0;
  for (double alpha : config.alpha_grid) {
    const std::string sub = alpha_dir_name(alpha);
    try {
      TrainedRun run = train_with_alpha(config, train_set, alpha, log);
      const AgreementReport report = evaluate(*run.model, test, config.rounding);
      ExperimentConfig sub_config = config;
      sub_config.train.alpha = alpha;
      OutputWriter sub_out(out.path(sub), "alpha-sweep", sub_config);
      sub_out.write_csv("history.csv", history_csv(run.history));
      sub_out.write_csv("evaluation.csv", report_csv(report));
      const bool degenerate = run.history.any_degenerate();
      csv += num(alpha) + "," + format_fixed(report.qwk) + "," + metric_or_blank(report.plcc) + "," +
             metric_or_blank(report.srcc) + "," + format_fixed(report.rmse) + "," + (degenerate ? "true" : "false") +
             ",\n";
      rmse_series.x.push_back(alpha);
      rmse_series.y.push_back(report.rmse);
      qwk_series.x.push_back(alpha);
      qwk_series.y.push_back(report.qwk);
      log("alpha " + num(alpha) + ": RMSE " + format_fixed(report.rmse, 4) + ", QWK " + format_fixed(report.qwk, 4));
    } catch (const Error& e) {
      ++failures;
      csv += num(alpha) + ",,,,,false," + csv_escape(e.what()) + "\n";
      log("alpha " + num(alpha) + " failed: " + e.what());
    }
  }
  out.write_csv("alpha_sweep.csv", csv);
  out.write("rmse_vs_alpha.svg", svg_line_chart("RMSE vs alpha", "alpha", "RMSE", {rmse_series}));
  out.write("qwk_vs_alpha.svg", svg_line_chart("QWK vs alpha", "alpha", "QWK", {qwk_series}));

  CommandResult result;
  result.files = out.files();
  result.summary = "swept " + std::to_string(config.alpha_grid.size()) + " alpha values (" +
                   std::to_string(failures) + " failed); results in " + out.path("alpha_sweep.csv");
  if (!rmse_series.y.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rmse_series.y.size(); ++i)
      if (rmse_series.y[i] < rmse_series.y[best]) best = i;
    result.summary += "; lowest RMSE " + format_fixed(rmse_series.y[best], 4) + " at alpha " +
                      num(rmse_series.x[best]);
  }
  log(result.summary);
  return result;
}

CommandResult cmd_baselines(const ExperimentConfig& config, const LogSink& log) {
  config.validate();
  const Dataset train_set = load_labeled_train(config, log);
  const Dataset test = load_test(config);
  auto client = make_llm_client(config);
  const RubricPrompt rubric = load_rubric(config);
  prepare_output_dir(config.out_dir, config.overwrite);
  OutputWriter out(config.out_dir, "baselines", config);

  std::string csv = "method," + report_csv_header() + "\n";
  const TrainedRun proposed = train_with_alpha(config, train_set, config.train.alpha, log);
  csv += baseline_row("proposed", evaluate(*proposed.model, test, config.rounding));
  const TrainedRun supervised = train_with_alpha(config, train_set, 1.0, log);
  csv += baseline_row("supervised_baseline", evaluate(*supervised.model, test, config.rounding));

  // The unsupervised baseline scores the test responses with the same rubric
  // prompt and cache as pseudo-labeling; no model is trained.
  PseudoLabelCache cache(config.effective_cache_path());
  LabelingOptions opts;
  opts.retries = config.retries;
  opts.concurrency = config.concurrency;
  const LabelingResult scored = pseudo_label_dataset(test, *client, rubric, opts, cache);
  std::vector<double> preds, gold;
  for (const Record& r : scored.dataset.records()) {
    if (!r.pseudo_score()) continue;
    preds.push_back(*r.pseudo_score());
    gold.push_back(r.gold_score());
  }
  if (!scored.rejections.empty())
    log("unsupervised baseline: " + std::to_string(scored.rejections.size()) +
        " test samples rejected by the client are left out");
  if (preds.empty()) throw ValidationError("the LLM client scored no test sample");
  csv += baseline_row("unsupervised_baseline", agreement(preds, gold, config.rounding));
  out.write_csv("baselines.csv", csv);

  CommandResult result;
  result.files = out.files();
  result.summary = "wrote proposed, supervised_baseline and unsupervised_baseline rows to " + out.path("baselines.csv");
  log(result.summary);
  return result;
}

CommandResult cmd_inject_errors(const ExperimentConfig& config, const LogSink& log) {
  config.validate();
  const Dataset test = load_test(config);
  const SyntheticSuite suite =
      build_synthetic_suite(test, config.score_threshold, config.intensities, config.error_types, config.train.seed);
  prepare_output_dir(config.out_dir, config.overwrite);
  OutputWriter out(config.out_dir, "inject-errors", config);
  out.write("suite.jsonl", suite_to_jsonl(suite));

  struct Cell {
    std::size_t n = 0, shortfalls = 0;
    double achieved = 0.0;
  };
  std::map<std::pair<std::size_t, double>, Cell> cells;
  for (const auto& rec : suite.records) {
    Cell& c = cells[{index_of(rec.type), rec.intensity}];
    ++c.n;
    c.achieved += rec.result.achieved_intensity;
    c.shortfalls += rec.result.shortfall ? 1 : 0;
  }
  std::string csv = "error_type,intensity,n,mean_achieved_intensity,shortfalls\n";
  for (ErrorType t : suite.types)
    for (double x : suite.intensities) {
      const Cell& c = cells[{index_of(t), x}];
      csv += std::string(to_string(t)) + "," + num(x) + "," + std::to_string(c.n) + "," +
             format_fixed(c.n ? c.achieved / static_cast<double>(c.n) : 0.0) + "," + std::to_string(c.shortfalls) +
             "\n";
    }
  out.write_csv("suite_summary.csv", csv);

  CommandResult result;
  result.files = out.files();
  result.summary = "corrupted " + std::to_string(suite.sample_ids.size()) + " samples with gold score >= " +
                   num(config.score_threshold) + " into " + std::to_string(suite.size()) + " records";
  log(result.summary);
  return result;
}

CommandResult cmd_robustness(const ExperimentConfig& config, const LogSink& log) {
  config.validate();
  require_path(config.model_path, "model snapshot (model_path / --model)");
  const auto model = load_model(config.model_path);
  SyntheticSuite suite;
  if (!config.suite_path.empty()) {
    suite = suite_from_jsonl(read_file(config.suite_path));
  } else {
    suite = build_synthetic_suite(load_test(config), config.score_threshold, config.intensities, config.error_types,
                                  config.train.seed);
  }
  prepare_output_dir(config.out_dir, config.overwrite);
  OutputWriter out(config.out_dir, "robustness-report", config);

  const auto rows = robustness_report(*model, suite, config.impact_threshold);
  out.write_csv("robustness.csv", robustness_csv(rows));
  std::vector<PlotSeries> mean_pred, impacted;
  for (ErrorType t : suite.types) {
    PlotSeries mp{std::string(to_string(t)), {}, {}}, pi{std::string(to_string(t)), {}, {}};
    for (const auto& r : rows) {
      if (r.type != t) continue;
      mp.x.push_back(r.intensity);
      mp.y.push_back(r.mean_pred);
      pi.x.push_back(r.intensity);
      pi.y.push_back(r.pct_impacted);
    }
    mean_pred.push_back(std::move(mp));
    impacted.push_back(std::move(pi));
  }
  out.write("mean_pred_vs_intensity.svg",
            svg_line_chart("Mean prediction vs error intensity", "intensity", "mean predicted score", mean_pred));
  out.write("pct_impacted_vs_intensity.svg",
            svg_line_chart("Impacted samples vs error intensity", "intensity", "% impacted", impacted));

  CommandResult result;
  result.files = out.files();
  result.summary = "robustness table with " + std::to_string(rows.size()) + " rows written to " +
                   out.path("robustness.csv");
  log(result.summary);
  return result;
}

}  // namespace gramscore
