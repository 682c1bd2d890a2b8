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

#include <doctest.h>

#include <filesystem>

#include <json.hpp>

#include "core/error.hpp"
#include "core/strings.hpp"
#include "dataset/dataset.hpp"
#include "harness/commands.hpp"
#include "harness/config.hpp"
#include "harness/plot.hpp"
#include "harness/synthetic.hpp"
#include "model/regression_model.hpp"
#include "metrics/metrics.hpp"
#include "pseudo_label/prompt.hpp"
#include "support.hpp"
#include "trainer/trainer.hpp"

using namespace gramscore;
using gramscore::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Capture {
  std::vector<std::string> lines;
  LogSink sink() {
    return [this](std::string_view l) { lines.emplace_back(l); };
  }
  bool contains(const std::string& needle) const {
    for (const auto& l : lines)
      if (l.find(needle) != std::string::npos) return true;
    return false;
  }
};

ExperimentConfig small_config(const TempDir& dir, const std::string& sub) {
  ExperimentConfig c;
  c.synthetic_train_size = 100;
  c.synthetic_test_size = 60;
  c.train.epochs = 3;
  c.train.seed = 5;
  c.out_dir = dir.file(sub);
  return c;
}

// gen-synthetic and pseudolabel into <dir>/data and <dir>/pl.
ExperimentConfig prepared(const TempDir& dir) {
  Capture log;
  ExperimentConfig c = small_config(dir, "data");
  cmd_gen_synthetic(c, log.sink());
  c.out_dir = dir.file("pl");
  c.train_path = dir.file("data/train.jsonl");
  cmd_pseudolabel(c, log.sink());
  c.train_path = dir.file("pl/train_labeled.jsonl");
  c.test_path = dir.file("data/test.jsonl");
  return c;
}

std::size_t lines_in(const std::string& path) {
  const std::string s = read_file(path);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig c = parse_config(
      "# experiment\n"
      "alpha = 0.4\n"
      "epochs=7   # inline comment\n"
      "\n"
      "backend=featurizer\n"
      "learning_rate=auto\n"
      "alpha_grid=0,0.5,1\n"
      "error_types=spelling,tense\n");
  CHECK(c.train.alpha == 0.4);
  CHECK(c.train.epochs == 7);
  CHECK_FALSE(c.train.learning_rate);
  CHECK(c.alpha_grid == std::vector<double>{0, 0.5, 1});
  CHECK(c.error_types == std::vector<ErrorType>{ErrorType::kSpelling, ErrorType::kTense});
  CHECK(parse_config(c.to_text()).to_text() == c.to_text());

  try {
    parse_config("alpha=0.3\nfrobnicate=1\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
    CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("epochs=-1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("alpha\n"), ConfigError);
  for (const char* key : {"api_key", "llm_endpoint", "token", "endpoint_url"}) {
    CAPTURE(key);
    CHECK_THROWS_AS(parse_config(std::string(key) + "=x\n"), ConfigError);
  }
  ExperimentConfig bad;
  bad.train.alpha = 2.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("config hash ignores the output location") {
  ExperimentConfig a, b;
  b.out_dir = "elsewhere";
  b.overwrite = true;
  CHECK(a.hash() == b.hash());
  b.train.seed = 1;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("output directories need consent to reuse") {
  TempDir dir;
  prepare_output_dir(dir.file("new/nested"), false);
  CHECK(fs::is_directory(dir.file("new/nested")));
  write_file(dir.file("new/nested/x.txt"), "x");
  CHECK_THROWS_AS(prepare_output_dir(dir.file("new/nested"), false), ConfigError);
  prepare_output_dir(dir.file("new/nested"), true);
  write_file(dir.file("plain"), "x");
  CHECK_THROWS_AS(prepare_output_dir(dir.file("plain"), true), ConfigError);
}

TEST_CASE("csv outputs carry a metadata sidecar") {
  TempDir dir;
  ExperimentConfig c;
  OutputWriter out(dir.file("o"), "evaluate", c);
  out.write_csv("t.csv", "a,b\n1,2\n3,4\n");
  const auto meta = nlohmann::json::parse(read_file(dir.file("o/t.csv.meta.json")));
  CHECK(meta["config_hash"] == c.hash());
  CHECK(meta["command"] == "evaluate");
  CHECK(meta["rows"] == 2);
  CHECK(meta["columns"] == nlohmann::json::array({"a", "b"}));
  CHECK(meta["version"] == GRAMSCORE_VERSION);
}

TEST_CASE("synthetic corpus") {
  SyntheticOptions o;
  o.train_size = 40;
  o.test_size = 20;
  o.seed = 3;
  const auto a = generate_corpus(o);
  const auto b = generate_corpus(o);
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  CHECK(a.train.size() == 40);
  CHECK(a.test.fully_rated());
  CHECK_FALSE(a.train[0].pseudo_score());
  CHECK(check_split_integrity(a.train, a.test).empty());
  for (std::size_t i = 0; i < a.test.size(); ++i) CHECK(a.test[i].gold_score() == a.test_items[i].true_score);
  for (const auto& item : a.train_items)
    if (item.specs.empty()) CHECK(item.true_score == 5.0);

  std::vector<double> labels(a.train.size(), 3.0);
  const auto noisy = attach_noisy_labels(a.train, labels, 0.25, 1);
  CHECK(std::count(noisy.corrupted.begin(), noisy.corrupted.end(), true) == 10);
  for (std::size_t i = 0; i < noisy.dataset.size(); ++i) {
    const double s = *noisy.dataset[i].pseudo_score();
    CHECK(s >= 1.0);
    CHECK(s <= 5.0);
    if (!noisy.corrupted[i]) CHECK(s == 3.0);
  }
}

TEST_CASE("pseudolabel command") {
  TempDir dir;
  Capture log;
  ExperimentConfig c = small_config(dir, "data");
  cmd_gen_synthetic(c, log.sink());
  c.train_path = dir.file("data/train.jsonl");
  c.out_dir = dir.file("pl");
  cmd_pseudolabel(c, log.sink());
  const Dataset labeled = load_dataset(dir.file("pl/train_labeled.jsonl"), false);
  CHECK(labeled.size() == 100);
  CHECK(labeled.fully_pseudo_labeled());
  CHECK(lines_in(dir.file("pl/rejections.csv")) == 1);

  SUBCASE("a fully cached rerun makes no calls") {
    Capture again;
    c.overwrite = true;
    cmd_pseudolabel(c, again.sink());
    CHECK(again.contains("client calls: 0"));
    CHECK(again.contains("no client calls"));
    CHECK(load_dataset(dir.file("pl/train_labeled.jsonl"), false) == labeled);
  }
  SUBCASE("too many rejections fail after writing the report") {
    const std::string cache = dir.file("rejecting.jsonl");
    std::string lines;
    const std::string hash = RubricPrompt::default_prompt().prompt_hash();
    const Dataset train = load_dataset(c.train_path, false);
    for (std::size_t i = 0; i < 20; ++i) {
      nlohmann::json j = {{"sample_id", train[i].sample().id}, {"prompt_hash", hash},
                          {"model_name", "mock-rubric-v1"}, {"raw_response", "n/a"},
                          {"score", nullptr}, {"reason", "parse failure: no number"}, {"attempts", 3}};
      lines += j.dump() + "\n";
    }
    write_file(cache, lines);
    c.cache_path = cache;
    c.out_dir = dir.file("pl20");
    try {
      cmd_pseudolabel(c, log.sink());
      FAIL("expected the rejection threshold to trip");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRejectionThreshold);
      CHECK(std::string(e.what()).find(dir.file("pl20/rejections.csv")) != std::string::npos);
    }
    CHECK(lines_in(dir.file("pl20/rejections.csv")) == 21);
  }
  SUBCASE("live backend without credentials fails before any output") {
    unsetenv("GRAMSCORE_LLM_ENDPOINT");
    unsetenv("GRAMSCORE_LLM_API_KEY");
    c.llm_backend = "live";
    c.out_dir = dir.file("live");
    CHECK_THROWS_AS(cmd_pseudolabel(c, log.sink()), ConfigError);
    CHECK_FALSE(fs::exists(dir.file("live")));
  }
}

TEST_CASE("train, evaluate and rerun byte-identically") {
  TempDir dir;
  ExperimentConfig c = prepared(dir);
  Capture log;
  for (const char* run : {"a", "b"}) {
    c.out_dir = dir.file(std::string("train_") + run);
    cmd_train(c, log.sink());
    ExperimentConfig e = c;
    e.model_path = dir.file(std::string("train_") + run + "/model.json");
    e.out_dir = dir.file(std::string("eval_") + run);
    cmd_evaluate(e, log.sink());
  }
  CHECK(lines_in(dir.file("train_a/history.csv")) == c.train.epochs + 1);
  for (const char* f : {"train_a/history.csv", "train_a/loss_matrix.csv", "eval_a/evaluation.csv"}) {
    std::string other = f;
    other.replace(other.find("_a/"), 3, "_b/");
    CHECK(read_file(dir.file(f)) == read_file(dir.file(other)));
  }
  const auto doc = nlohmann::json::parse(read_file(dir.file("train_a/model.json")));
  CHECK(doc["run"]["seed"] == 5);
  CHECK(doc["run"]["config_hash"] == c.hash());

  ExperimentConfig unrated = c;
  unrated.model_path = dir.file("train_a/model.json");
  unrated.test_path = dir.file("data/train.jsonl");
  unrated.out_dir = dir.file("eval_bad");
  CHECK_THROWS_AS(cmd_evaluate(unrated, log.sink()), ValidationError);

  ExperimentConfig unlabeled = c;
  unlabeled.train_path = dir.file("data/train.jsonl");
  unlabeled.out_dir = dir.file("train_bad");
  CHECK_THROWS_AS(cmd_train(unlabeled, log.sink()), ValidationError);
}

TEST_CASE("alpha sweep") {
  TempDir dir;
  ExperimentConfig c = prepared(dir);
  c.train.epochs = 2;
  c.out_dir = dir.file("sweep");
  Capture log;
  cmd_alpha_sweep(c, log.sink());
  const std::string csv = read_file(dir.file("sweep/alpha_sweep.csv"));
  CHECK(lines_in(dir.file("sweep/alpha_sweep.csv")) == 12);
  CHECK(csv.rfind("alpha,qwk,plcc,srcc,rmse,degenerate,error\n0,", 0) == 0);
  const auto first_row = csv.substr(csv.find('\n') + 1, csv.find('\n', csv.find('\n') + 1) - csv.find('\n') - 1);
  CHECK(first_row.find(",true,") != std::string::npos);
  CHECK(log.contains("warning: alpha 0 selects no samples"));
  CHECK(read_file(dir.file("sweep/rmse_vs_alpha.svg")).find("<svg") != std::string::npos);
  CHECK(fs::exists(dir.file("sweep/alpha_0.30/evaluation.csv")));

  // Each row depends only on (seed, alpha): a one-point sweep reproduces it.
  ExperimentConfig one = c;
  one.alpha_grid = {0.3};
  one.out_dir = dir.file("sweep03");
  cmd_alpha_sweep(one, log.sink());
  CHECK(read_file(dir.file("sweep03/alpha_0.30/evaluation.csv")) ==
        read_file(dir.file("sweep/alpha_0.30/evaluation.csv")));
}

TEST_CASE("baselines") {
  TempDir dir;
  ExperimentConfig c = prepared(dir);
  c.out_dir = dir.file("bl");
  Capture log;
  cmd_baselines(c, log.sink());
  const std::string csv = read_file(dir.file("bl/baselines.csv"));
  CHECK(lines_in(dir.file("bl/baselines.csv")) == 4);
  CHECK(csv.find("\nproposed,") != std::string::npos);
  CHECK(csv.find("\nunsupervised_baseline,") != std::string::npos);

  ExperimentConfig one = c;
  one.train.alpha = 1.0;
  one.out_dir = dir.file("alpha1");
  cmd_train(one, log.sink());
  const auto model = load_model(dir.file("alpha1/model.json"));
  const auto report = evaluate(*model, load_dataset(c.test_path, true));
  CHECK(csv.find("\nsupervised_baseline," + report_csv_row(report) + "\n") != std::string::npos);
}

TEST_CASE("error suite and robustness commands") {
  TempDir dir;
  ExperimentConfig c = prepared(dir);
  Capture log;
  c.out_dir = dir.file("model");
  cmd_train(c, log.sink());
  c.model_path = dir.file("model/model.json");
  c.score_threshold = 4.0;
  c.intensities = {0.0, 0.1, 0.2};
  c.out_dir = dir.file("suite");
  cmd_inject_errors(c, log.sink());
  CHECK(lines_in(dir.file("suite/suite_summary.csv")) == 31);

  c.suite_path = dir.file("suite/suite.jsonl");
  c.out_dir = dir.file("rob");
  cmd_robustness(c, log.sink());
  CHECK(lines_in(dir.file("rob/robustness.csv")) == 31);
  CHECK(fs::exists(dir.file("rob/mean_pred_vs_intensity.svg")));

  // Without a suite file the suite is built from the test set on the fly.
  c.suite_path.clear();
  c.intensities = {0.0};
  c.out_dir = dir.file("rob0");
  cmd_robustness(c, log.sink());
  const std::string csv = read_file(dir.file("rob0/robustness.csv"));
  CHECK(lines_in(dir.file("rob0/robustness.csv")) == 11);
  CHECK(csv.find("0.000000,0.00,") != std::string::npos);
}

TEST_CASE("svg chart") {
  const std::string svg = svg_line_chart("t<&>", "x", "y", {{"a", {0, 1}, {1, 2}}, {"b", {0, 1}, {2, 1}}});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("t&lt;&amp;&gt;") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
}
