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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero when a criterion fails, unless it is listed with --allow-fail.
//
//   gramscore_acceptance --cli <path to gramscore> [--work DIR]
//                        [--only 1,2,...] [--allow-fail 4,...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "core/error.hpp"
#include "core/strings.hpp"
#include "error_injection/inject.hpp"
#include "error_injection/robustness.hpp"
#include "error_injection/suite.hpp"
#include "harness/synthetic.hpp"
#include "metrics/metrics.hpp"
#include "model/featurizer_model.hpp"
#include "pseudo_label/client.hpp"
#include "trainer/sample_weights.hpp"
#include "trainer/trainer.hpp"

namespace fs = std::filesystem;
using namespace gramscore;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Clean-set selection and weights against independent oracles.

// Members of the k smallest losses by subset enumeration: the subset with
// the smallest sorted loss profile, ties broken by the smaller index sum.
std::vector<std::size_t> subset_oracle(const std::vector<double>& losses, std::size_t k) {
  const std::size_t n = losses.size();
  std::vector<std::size_t> best;
  double best_sum = 0.0;
  std::size_t best_index_sum = 0;
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<std::size_t> members;
    double sum = 0.0;
    std::size_t index_sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        members.push_back(i);
        index_sum += i;
      }
    std::vector<double> values;
    for (std::size_t i : members) values.push_back(losses[i]);
    std::sort(values.begin(), values.end());
    for (double v : values) sum += v;
    if (!found || sum < best_sum || (sum == best_sum && index_sum < best_index_sum)) {
      found = true;
      best = members;
      best_sum = sum;
      best_index_sum = index_sum;
    }
  }
  return best;
}

// Sample i is kept when fewer than k samples precede it in (loss, index) order.
std::vector<std::size_t> rank_oracle(const std::vector<double>& losses, std::size_t k) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    std::size_t before = 0;
    for (std::size_t j = 0; j < losses.size(); ++j)
      if (losses[j] < losses[i] || (losses[j] == losses[i] && j < i)) ++before;
    if (before < k) members.push_back(i);
  }
  return members;
}

Outcome criterion_trainer_formula() {
  std::mt19937_64 gen(20260101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t mismatches = 0, brute = 0, degenerate = 0;
  double worst_sum = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    // Small instances go through subset enumeration, the rest through ranks.
    const std::size_t n = trial < 100 ? 1 + gen() % 16 : 17 + gen() % 34;
    std::vector<double> losses(n);
    for (double& l : losses) l = trial % 3 == 0 ? static_cast<double>(gen() % 5) / 4.0 : unit(gen);
    // alpha = p / q so the exact retained count is (p * n) / q.
    const std::uint64_t q = 1 + gen() % 100;
    const std::uint64_t p = trial == 0 ? 0 : trial == 1 ? q : gen() % (q + 1);
    const double alpha = static_cast<double>(p) / static_cast<double>(q);
    const std::size_t k = static_cast<std::size_t>((p * n) / q);

    const CleanSet clean = select_clean({static_cast<std::size_t>(trial), losses}, alpha);
    const SampleWeights w = update_weights(clean, n);
    std::vector<std::size_t> got = clean.indices;
    std::sort(got.begin(), got.end());
    const bool small = n <= 16;
    brute += small;
    const auto expected = small ? subset_oracle(losses, k) : rank_oracle(losses, k);
    bool ok = got == expected && w.weights.size() == n;
    for (std::size_t i = 0; ok && i < n; ++i) {
      const bool member = std::binary_search(expected.begin(), expected.end(), i);
      const double closed_form = member ? 1.0 / static_cast<double>(k) : 0.0;
      ok = w.weights[i] == closed_form;
    }
    const double sum = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
    if (k == 0) {
      ++degenerate;
      ok = ok && w.degenerate && sum == 0.0;
    } else {
      ok = ok && !w.degenerate;
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
    mismatches += !ok;
  }
  Outcome o;
  o.pass = mismatches == 0 && worst_sum <= 1e-9;
  o.detail = std::to_string(200 - mismatches) + "/200 instances match (" + std::to_string(brute) +
             " by subset enumeration, " + std::to_string(degenerate) + " degenerate); max |sum-1| " +
             fmt("%.2e", worst_sum);
  return o;
}

// ---------------------------------------------------------------------------
// Shared corpus helpers.

Dataset mock_labeled_train(std::size_t n, std::uint64_t seed, double clean_fraction) {
  SyntheticOptions opts;
  opts.train_size = n;
  opts.test_size = 0;
  opts.seed = seed;
  opts.clean_fraction = clean_fraction;
  const SyntheticCorpus corpus = generate_corpus(opts);
  std::vector<double> labels;
  for (const auto& r : corpus.train.records()) labels.push_back(MockClient::rule_score(r.sample().text));
  return attach_noisy_labels(corpus.train, labels, 0.0, seed).dataset;
}

// ---------------------------------------------------------------------------
// 2. alpha = 1 against a plain uniform-weight MSE loop.

Outcome criterion_alpha_one() {
  const Dataset d = mock_labeled_train(500, 31, 0.15);
  TrainConfig cfg;
  cfg.alpha = 1.0;
  cfg.epochs = 5;
  cfg.seed = 17;
  auto adaptive = make_model("featurizer", 4);
  auto plain = adaptive->clone();
  std::vector<ModelSnapshot> trajectory;
  TrainCallbacks cb;
  cb.on_step = [&](std::size_t, std::size_t, const RegressionModel& m) { trajectory.push_back(m.snapshot()); };
  train(*adaptive, d, cfg, cb);

  const double lr = plain->default_learning_rate(d.size());
  const double w = 1.0 / static_cast<double>(d.size());
  std::size_t step = 0, equal = 0;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = epoch_order(d.size(), cfg.seed, epoch, true);
    for (std::size_t start = 0; start < d.size(); start += cfg.batch_size, ++step) {
      std::vector<WeightedExample> batch;
      for (std::size_t k = start; k < std::min(d.size(), start + cfg.batch_size); ++k)
        batch.push_back({d[order[k]].sample().text, *d[order[k]].pseudo_score(), w, order[k]});
      plain->train_step(batch, lr);
      if (step < trajectory.size() && plain->snapshot() == trajectory[step]) ++equal;
    }
  }
  Outcome o;
  o.pass = step == trajectory.size() && equal == step;
  o.detail = std::to_string(equal) + "/" + std::to_string(step) + " parameter snapshots bitwise equal over " +
             std::to_string(cfg.epochs) + " epochs on " + std::to_string(d.size()) + " samples";
  return o;
}

// ---------------------------------------------------------------------------
// 3-5. Noisy-label experiments on the synthetic corpus.

struct NoisyRun {
  SyntheticCorpus corpus;
  NoisyLabels noisy;
};

NoisyRun noisy_corpus(std::uint64_t seed) {
  SyntheticOptions opts;
  opts.seed = seed;
  opts.clean_fraction = 0.0;
  NoisyRun run{generate_corpus(opts), {}};
  std::vector<double> labels;
  for (const auto& r : run.corpus.train.records()) labels.push_back(MockClient::rule_score(r.sample().text));
  run.noisy = attach_noisy_labels(run.corpus.train, labels, 0.4, seed + 7);
  return run;
}

constexpr std::uint64_t kNoisySeeds[] = {100, 101, 102};
constexpr std::size_t kNoisyEpochs = 20;

double noisy_rmse(const NoisyRun& run, double alpha, std::uint64_t seed) {
  auto model = make_model("featurizer", seed);
  TrainConfig cfg;
  cfg.alpha = alpha;
  cfg.epochs = kNoisyEpochs;
  cfg.seed = seed;
  train(*model, run.noisy.dataset, cfg);
  return evaluate(*model, run.corpus.test, RoundingPolicy::kNearestIntegerClamped).rmse;
}

// Mean test RMSE per alpha over the three seeds; shared by criteria 3 and 4.
const std::map<double, double>& alpha_sweep() {
  static const std::map<double, double> sweep = [] {
    std::map<double, double> mean;
    for (std::uint64_t seed : kNoisySeeds) {
      const NoisyRun run = noisy_corpus(seed);
      for (int a = 0; a <= 10; ++a) mean[a / 10.0] += noisy_rmse(run, a / 10.0, seed) / 3.0;
    }
    return mean;
  }();
  return sweep;
}

Outcome criterion_noise_direction() {
  const auto& s = alpha_sweep();
  const double r03 = s.at(0.3), r10 = s.at(1.0);
  const double gain = 1.0 - r03 / r10;
  Outcome o;
  o.pass = r03 <= 0.9 * r10;
  o.detail = "mean RMSE alpha 0.3 " + fmt("%.4f", r03) + " vs alpha 1.0 " + fmt("%.4f", r10) + " (" +
             fmt("%.1f", 100.0 * gain) + "% lower, need >= 10%); timing covers the 11-point sweep shared with criterion 4";
  return o;
}

Outcome criterion_sweep_shape() {
  const auto& s = alpha_sweep();
  auto best = s.begin();
  for (auto it = s.begin(); it != s.end(); ++it)
    if (it->second < best->second) best = it;
  Outcome o;
  o.pass = best->first >= 0.2 - 1e-12 && best->first <= 0.6 + 1e-12 && best->second < s.at(1.0) &&
           best->second < s.at(0.1);
  std::string curve;
  for (const auto& [a, r] : s) curve += (curve.empty() ? "" : " ") + fmt("%.1f", a) + ":" + fmt("%.3f", r);
  o.detail = "best alpha " + fmt("%.1f", best->first) + " (need 0.2..0.6), RMSE " + fmt("%.4f", best->second) +
             "; curve " + curve;
  return o;
}

Outcome criterion_identification() {
  std::size_t zero = 0, hit = 0;
  double worst = 1.0;
  for (std::uint64_t seed : kNoisySeeds) {
    const NoisyRun run = noisy_corpus(seed);
    auto model = make_model("featurizer", seed);
    TrainConfig cfg;
    cfg.alpha = 0.6;
    cfg.epochs = 5;
    cfg.seed = seed;
    const auto history = train(*model, run.noisy.dataset, cfg);
    const auto& w = history.epochs.back().next_weights;
    std::size_t z = 0, h = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] == 0.0) {
        ++z;
        h += run.noisy.corrupted[i];
      }
    zero += z;
    hit += h;
    worst = std::min(worst, z ? static_cast<double>(h) / static_cast<double>(z) : 0.0);
  }
  const double precision = static_cast<double>(hit) / static_cast<double>(zero);
  Outcome o;
  o.pass = worst >= 0.8;
  o.detail = fmt("%.1f", 100.0 * precision) + "% of " + std::to_string(zero) +
             " zero-weight samples are corrupted (worst seed " + fmt("%.1f", 100.0 * worst) + "%, need >= 80%)";
  return o;
}

// ---------------------------------------------------------------------------
// 6. Metrics against reference formulas.

int level_ref(double x) { return static_cast<int>(std::clamp(std::floor(x + 0.5), 1.0, 5.0)); }

double qwk_ref(const std::vector<double>& a, const std::vector<double>& b) {
  double o[5][5] = {}, ha[5] = {}, hb[5] = {};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int x = level_ref(a[i]) - 1, y = level_ref(b[i]) - 1;
    o[x][y] += 1;
    ha[x] += 1;
    hb[y] += 1;
  }
  double num = 0, den = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double w = (i - j) * (i - j) / 16.0;
      num += w * o[i][j];
      den += w * ha[i] * hb[j] / static_cast<double>(a.size());
    }
  return den == 0 ? 1.0 : 1.0 - num / den;
}

double pearson_ref(const std::vector<double>& a, const std::vector<double>& b) {
  long double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  const long double n = static_cast<long double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    saa += static_cast<long double>(a[i]) * a[i];
    sbb += static_cast<long double>(b[i]) * b[i];
    sab += static_cast<long double>(a[i]) * b[i];
  }
  const long double cov = sab - sa * sb / n;
  return static_cast<double>(cov / std::sqrt((saa - sa * sa / n) * (sbb - sb * sb / n)));
}

std::vector<double> ranks_ref(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, same = 0;
    for (double x : v) {
      less += x < v[i];
      same += x == v[i];
    }
    r[i] = less + (same + 1.0) / 2.0;
  }
  return r;
}

double rmse_ref(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i] - b[i]) * (a[i] - b[i]);
  return static_cast<double>(std::sqrt(s / static_cast<long double>(a.size())));
}

Outcome criterion_metrics() {
  std::mt19937_64 gen(6006);
  std::uniform_real_distribution<double> score(1.0, 5.0);
  double worst[4] = {0, 0, 0, 0};
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + gen() % 199;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Mix integer, half-point and continuous scores.
      switch (trial % 3) {
        case 0: a[i] = 1.0 + static_cast<double>(gen() % 5); b[i] = 1.0 + static_cast<double>(gen() % 5); break;
        case 1: a[i] = 1.0 + static_cast<double>(gen() % 9) / 2.0; b[i] = 1.0 + static_cast<double>(gen() % 9) / 2.0; break;
        default: a[i] = score(gen); b[i] = score(gen); break;
      }
    }
    worst[0] = std::max(worst[0], std::abs(qwk(a, b) - qwk_ref(a, b)));
    worst[3] = std::max(worst[3], std::abs(rmse(a, b) - rmse_ref(a, b)));
    try {
      worst[1] = std::max(worst[1], std::abs(plcc(a, b) - pearson_ref(a, b)));
      worst[2] = std::max(worst[2], std::abs(srcc(a, b) - pearson_ref(ranks_ref(a), ranks_ref(b))));
    } catch (const UndefinedValueError&) {
      // Constant vectors have no reference value either.
    }
  }
  const std::vector<double> ramp = {1, 2, 3, 4, 5};
  const double perfect = qwk(ramp, ramp);
  const double reversed = qwk(std::vector<double>{5, 1}, std::vector<double>{1, 5});
  const double max_err = *std::max_element(worst, worst + 4);
  Outcome o;
  o.pass = max_err <= 1e-9 && perfect == 1.0 && reversed == -1.0;
  o.detail = "max abs error qwk " + fmt("%.1e", worst[0]) + ", plcc " + fmt("%.1e", worst[1]) + ", srcc " +
             fmt("%.1e", worst[2]) + ", rmse " + fmt("%.1e", worst[3]) + "; qwk(ramp) " + fmt("%g", perfect) +
             ", qwk([5,1],[1,5]) " + fmt("%g", reversed);
  return o;
}

// ---------------------------------------------------------------------------
// 7. Error-injection contract.

std::string words_text(std::uint64_t seed, std::size_t words) {
  TemplateWriter writer(seed);
  std::string text;
  while (word_count(text) < words) text += (text.empty() ? "" : " ") + writer.sentence();
  // Sentences rarely end on the exact count, so cut at a word boundary.
  std::istringstream in(text);
  std::string w, out;
  for (std::size_t i = 0; i < words && in >> w; ++i) out += (out.empty() ? "" : " ") + w;
  if (out.back() != '.') out += '.';
  return out;
}

Outcome criterion_injection() {
  std::size_t failures = 0, checks = 0;
  auto expect = [&](bool ok) {
    ++checks;
    failures += !ok;
  };
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const std::string text = words_text(seed, 80);
    for (ErrorType t : kAllErrorTypes) {
      const auto zero = inject(text, {t, 0.0, seed});
      expect(zero.corrupted == text && zero.edits.empty());
      const auto r = inject(text, {t, 0.2, seed});
      expect(inject(text, {t, 0.2, seed}) == r);
      expect(apply_edits(text, r.edits) == r.corrupted);
    }
  }
  // Edit logs survive serialization and replay to the same bytes.
  std::vector<Record> recs;
  TemplateWriter writer(5);
  for (int i = 0; i < 6; ++i) recs.push_back(Record(Sample{"s" + std::to_string(i), "c" + std::to_string(i), writer.paragraph(5)}, {5.0}));
  const Dataset rated(std::move(recs), SplitTag::kTest);
  const std::vector<ErrorType> all(kAllErrorTypes.begin(), kAllErrorTypes.end());
  const auto suite = build_synthetic_suite(rated, 4.5, {0.0, 0.1, 0.3}, all, 9);
  const std::string jsonl = suite_to_jsonl(suite);
  const auto back = suite_from_jsonl(jsonl);
  expect(suite_to_jsonl(back) == jsonl);
  for (const auto& rec : back.records) expect(apply_edits(rec.result.original, rec.result.edits) == rec.result.corrupted);

  const std::string hundred = words_text(21, 100);
  std::string insertion;
  for (ErrorType t : {ErrorType::kFillerWord, ErrorType::kRedundantPhrase}) {
    const auto r = inject(hundred, {t, 0.1, 3});
    expect(word_count(hundred) == 100 && r.achieved_intensity == 0.10);
    insertion += std::string(insertion.empty() ? "" : ", ") + std::string(to_string(t)) + " " +
                 fmt("%.2f", r.achieved_intensity);
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = std::to_string(checks - failures) + "/" + std::to_string(checks) +
             " checks hold over 10 types; achieved intensity at 0.1 on 100 words: " + insertion;
  return o;
}

// ---------------------------------------------------------------------------
// 8. Robustness direction.

Outcome criterion_robustness() {
  SyntheticOptions opts;
  opts.seed = 100;
  const SyntheticCorpus corpus = generate_corpus(opts);
  std::vector<double> labels;
  for (const auto& r : corpus.train.records()) labels.push_back(MockClient::rule_score(r.sample().text));
  const Dataset train_set = attach_noisy_labels(corpus.train, labels, 0.0, 1).dataset;
  auto model = make_model("featurizer", 0);
  TrainConfig cfg;
  cfg.alpha = 1.0;
  train(*model, train_set, cfg);

  const std::vector<ErrorType> all(kAllErrorTypes.begin(), kAllErrorTypes.end());
  const auto suite = build_synthetic_suite(corpus.test, 4.5, {0.0, 0.1, 0.2, 0.3}, all, 42);
  const auto rows = robustness_report(*model, suite, 0.25);
  std::map<ErrorType, std::vector<RobustnessRow>> by_type;
  for (const auto& row : rows) by_type[row.type].push_back(row);
  std::size_t decreasing = 0, monotone_impact = 0;
  std::string not_decreasing;
  for (auto& [type, v] : by_type) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.intensity < b.intensity; });
    bool dec = v.size() == 4, imp = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
      dec = dec && v[i].mean_pred < v[i - 1].mean_pred;
      imp = imp && v[i].pct_impacted >= v[i - 1].pct_impacted;
    }
    decreasing += dec;
    monotone_impact += imp;
    if (!dec) not_decreasing += " " + std::string(to_string(type));
  }
  Outcome o;
  o.pass = decreasing >= 8 && monotone_impact == 10 && by_type.size() == 10;
  o.detail = std::to_string(decreasing) + "/10 types strictly decreasing (need 8), " +
             std::to_string(monotone_impact) + "/10 with non-decreasing impact, " +
             std::to_string(suite.sample_ids.size()) + " suite samples" +
             (not_decreasing.empty() ? "" : "; not decreasing:" + not_decreasing);
  return o;
}

// ---------------------------------------------------------------------------
// 9. CLI pipeline reproducibility.

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

bool run_pipeline(const std::string& cli, const fs::path& dir, std::string* error) {
  const std::string common = " --seed 7 --set synthetic_train_size=400 --set synthetic_test_size=100 -q > " +
                             shell_quote((dir / "stdout.txt").string()) + " 2>&1";
  const std::string q = shell_quote(cli);
  auto p = [&](const char* rel) { return shell_quote((dir / rel).string()); };
  const std::vector<std::string> steps = {
      q + " gen-synthetic --out " + p("gen") + common,
      q + " pseudolabel --backend mock --train " + p("gen/train.jsonl") + " --out " + p("label") + common,
      q + " train --train " + p("label/train_labeled.jsonl") + " --epochs 5 --out " + p("train") + common,
      q + " evaluate --model " + p("train/model.json") + " --test " + p("gen/test.jsonl") + " --out " +
          p("eval") + common,
  };
  for (const auto& cmd : steps)
    if (std::system(cmd.c_str()) != 0) {
      *error = "command failed: " + cmd;
      return false;
    }
  return true;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_pipeline(const std::string& cli, const fs::path& work) {
  Outcome o;
  if (cli.empty()) {
    o.detail = "no CLI path given (--cli)";
    return o;
  }
  const fs::path root = work / "pipeline";
  fs::remove_all(root);
  std::string error;
  for (const char* run : {"a", "b"}) {
    fs::create_directories(root / run);
    if (!run_pipeline(cli, root / run, &error)) {
      o.detail = error;
      return o;
    }
  }
  std::size_t csvs = 0, identical = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (entry.path().extension() != ".csv") continue;
    ++csvs;
    const fs::path other = root / "b" / fs::relative(entry.path(), root / "a");
    if (fs::exists(other) && slurp(entry.path()) == slurp(other)) ++identical;
  }
  o.pass = csvs >= 4 && identical == csvs;
  o.detail = std::to_string(identical) + "/" + std::to_string(csvs) + " CSV files byte-identical across two runs";
  return o;
}

// ---------------------------------------------------------------------------
// 10. Featurizer gradient check.

Outcome criterion_gradient() {
  std::mt19937_64 gen(1010);
  std::uniform_real_distribution<double> param(-0.5, 0.5), target(1.0, 5.0), weight(0.0, 1.0);
  std::vector<std::string> texts;
  TemplateWriter writer(3);
  for (int i = 0; i < 40; ++i) {
    const std::string clean = writer.paragraph(3);
    const auto type = kAllErrorTypes[static_cast<std::size_t>(i) % kAllErrorTypes.size()];
    texts.push_back(i % 4 == 0 ? clean : inject(clean, {type, 0.05 * (i % 5), static_cast<std::uint64_t>(i)}).corrupted);
  }
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    FeaturizerModel m;
    FeatureVector w;
    for (double& x : w) x = param(gen);
    m.set_parameters(w, 3.0 + param(gen));
    std::vector<WeightedExample> batch;
    for (std::size_t i = 0; i < 4 + static_cast<std::size_t>(trial); ++i)
      batch.push_back({texts[gen() % texts.size()], target(gen), weight(gen), i});
    const auto g = m.gradient(batch);
    const double h = 1e-5;
    for (std::size_t i = 0; i <= kFeatureCount; ++i) {
      FeatureVector wp = w, wm = w;
      double bp = m.bias(), bm = m.bias();
      if (i < kFeatureCount) {
        wp[i] += h;
        wm[i] -= h;
      } else {
        bp += h;
        bm -= h;
      }
      FeaturizerModel plus, minus;
      plus.set_parameters(wp, bp);
      minus.set_parameters(wm, bm);
      const double numeric = (plus.batch_loss(batch) - minus.batch_loss(batch)) / (2 * h);
      const double analytic = i < kFeatureCount ? g.weights[i] : g.bias;
      worst = std::max(worst, std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-6}));
    }
  }
  Outcome o;
  o.pass = worst < 1e-4;
  o.detail = "max relative error " + fmt("%.2e", worst) + " over 10 batches (need < 1e-4)";
  return o;
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs the gramscore acceptance criteria."};
  std::string cli, work = (fs::temp_directory_path() / "gramscore_acceptance").string(), only, allow;
  app.add_option("--cli", cli, "Path to the gramscore executable (criterion 9)");
  app.add_option("--work", work, "Scratch directory");
  app.add_option("--only", only, "Comma-separated criteria to run");
  app.add_option("--allow-fail", allow, "Criteria whose failure does not change the exit status");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> selected = parse_list(only), allowed = parse_list(allow);

  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 means no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "trainer formula fidelity", 10, criterion_trainer_formula},
      {2, "alpha 1.0 equivalence", 30, criterion_alpha_one},
      {3, "noise-robustness direction", 300, criterion_noise_direction},
      {4, "alpha-sweep shape", 1200, criterion_sweep_shape},
      {5, "corrupted-sample identification", 300, criterion_identification},
      {6, "metrics oracle equivalence", 0, criterion_metrics},
      {7, "error-injection contract", 0, criterion_injection},
      {8, "robustness direction", 300, criterion_robustness},
      {9, "pipeline reproducibility", 0, [&] { return criterion_pipeline(cli, work); }},
      {10, "gradient check", 0, criterion_gradient},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.1fs", secs);
    if (c.budget_s > 0) {
      timing += fmt(" of %.0fs budget", c.budget_s);
      if (secs > c.budget_s) {
        o.pass = false;
        o.detail += "; over the runtime budget";
      }
    }
    const bool tolerated = !o.pass && allowed.count(c.id);
    std::printf("%s %2d %s: %s [%s]%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str(),
                tolerated ? " (known failure)" : "");
    std::fflush(stdout);
    if (!o.pass && !tolerated) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
