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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "core/error.hpp"
#include "harness/synthetic.hpp"
#include "model/featurizer_model.hpp"
#include "pseudo_label/client.hpp"
#include "support.hpp"
#include "trainer/sample_weights.hpp"
#include "trainer/trainer.hpp"

using namespace gramscore;
using gramscore::testing::labeled;

namespace {

// Enumerates every subset of size k and keeps the one with the smallest
// total loss; ties go to the smallest index sum.
std::vector<std::size_t> brute_force_clean(const std::vector<double>& losses, std::size_t k) {
  const std::size_t n = losses.size();
  std::vector<std::size_t> best;
  bool found = false;
  double best_sum = 0.0;
  std::size_t best_index_sum = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<std::size_t> members;
    std::vector<double> values;
    std::size_t index_sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        members.push_back(i);
        values.push_back(losses[i]);
        index_sum += i;
      }
    std::sort(values.begin(), values.end());
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (!found || sum < best_sum || (sum == best_sum && index_sum < best_index_sum)) {
      found = true;
      best = members;
      best_sum = sum;
      best_index_sum = index_sum;
    }
  }
  return best;
}

Dataset corpus_with_labels(std::size_t n, std::uint64_t seed, std::vector<double>* truth) {
  SyntheticOptions opts;
  opts.train_size = n;
  opts.test_size = 0;
  opts.seed = seed;
  const SyntheticCorpus corpus = generate_corpus(opts);
  truth->clear();
  for (const auto& item : corpus.train_items) truth->push_back(MockClient::rule_score(item.sample.text));
  return attach_noisy_labels(corpus.train, *truth, 0.0, seed).dataset;
}

}  // namespace

TEST_CASE("init_weights") {
  CHECK(init_weights(4).weights == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  CHECK(init_weights(1).weights == std::vector<double>{1.0});
  const auto w3 = init_weights(3);
  for (double w : w3.weights) CHECK(w == 1.0 / 3.0);
  CHECK(std::abs(w3.sum() - 1.0) <= 1e-9);
  CHECK(w3.epoch == 0);
  CHECK_THROWS_AS(init_weights(0), ValidationError);
}

TEST_CASE("clean_set_size floors alpha * N") {
  CHECK(clean_set_size(0.7, 10) == 7);
  CHECK(clean_set_size(0.3, 10) == 3);
  CHECK(clean_set_size(0.5, 5) == 2);
  CHECK(clean_set_size(1.0 / 3.0, 3) == 1);
  CHECK(clean_set_size(0.0, 100) == 0);
  CHECK(clean_set_size(1.0, 7) == 7);
  CHECK(clean_set_size(0.09, 10) == 0);
}

TEST_CASE("select_clean examples") {
  CHECK(select_clean({0, {0.9, 0.1, 0.5, 0.3}}, 0.5).indices == std::vector<std::size_t>{1, 3});
  CHECK(select_clean({0, {0.9, 0.1, 0.5, 0.3}}, 1.0).indices == std::vector<std::size_t>{1, 3, 2, 0});
  CHECK(select_clean({0, {0.2, 0.2, 0.2}}, 1.0 / 3.0).indices == std::vector<std::size_t>{0});
  CHECK(select_clean({0, {0.2, 0.2, 0.2}}, 0.0).empty());
  const auto c = select_clean({3, {0.4, 0.1, 0.4, 0.0}}, 0.5);
  CHECK(c.epoch == 3);
  CHECK(c.permutation == std::vector<std::size_t>{3, 1, 0, 2});
  CHECK_THROWS_AS(select_clean({0, {0.1}}, 1.5), ValidationError);
  CHECK_THROWS_AS(select_clean({0, {0.1}}, -0.1), ValidationError);
  CHECK_THROWS_AS(select_clean({0, {0.1, NAN}}, 0.5), ValidationError);
}

TEST_CASE("select_clean agrees with subset enumeration") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 14;
    std::vector<double> losses(n);
    // Half the instances draw from a few levels so ties are common.
    for (double& l : losses) l = trial % 2 ? unit(gen) : static_cast<double>(gen() % 4) / 4.0;
    const double alpha = unit(gen);
    const auto clean = select_clean({0, losses}, alpha);
    const std::size_t k = clean_set_size(alpha, n);
    auto expected = brute_force_clean(losses, k);
    auto got = clean.indices;
    std::sort(got.begin(), got.end());
    CAPTURE(trial);
    CHECK(got == expected);
    for (std::size_t i : clean.indices)
      for (std::size_t j = 0; j < n; ++j)
        if (std::find(clean.indices.begin(), clean.indices.end(), j) == clean.indices.end())
          CHECK((losses[i] < losses[j] || (losses[i] == losses[j] && i < j)));
  }
}

TEST_CASE("update_weights") {
  const auto w = update_weights({0, {1, 3}, {}}, 4);
  CHECK(w.weights == std::vector<double>{0, 0.5, 0, 0.5});
  CHECK(w.epoch == 1);
  CHECK(update_weights({0, {0, 1, 2, 3}, {}}, 4).weights == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  const auto empty = update_weights({0, {}, {}}, 4);
  CHECK(empty.weights == std::vector<double>{0, 0, 0, 0});
  CHECK(empty.degenerate);
  CHECK_THROWS_AS(update_weights({0, {4}, {}}, 4), ValidationError);
}

TEST_CASE("per_sample_losses") {
  FeaturizerModel m;
  m.set_parameters(FeatureVector{}, 3.0);
  const auto exact = per_sample_losses(m, labeled({"One two three.", "Four five."}, {3.0, 3.0}));
  CHECK(exact.losses == std::vector<double>{0.0, 0.0});
  CHECK(per_sample_losses(m, labeled({"One two three."}, {5.0})).losses == std::vector<double>{4.0});

  std::vector<double> truth;
  const Dataset d = corpus_with_labels(60, 4, &truth);
  auto model = make_model("featurizer", 4);
  const auto preds = model->predict_batch(d.texts());
  const auto losses = per_sample_losses(*model, d).losses;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = preds[i] - *d[i].pseudo_score();
    CHECK(std::abs(losses[i] - r * r) <= 1e-12);
  }

  const Dataset unlabeled({gramscore::testing::make_record("u", "No label here.")}, SplitTag::kTrain);
  CHECK_THROWS_AS(per_sample_losses(m, unlabeled), ValidationError);
}

TEST_CASE("one epoch is one pass of uniformly weighted training") {
  std::vector<double> truth;
  const Dataset d = corpus_with_labels(100, 2, &truth);
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.alpha = 0.3;
  cfg.seed = 12;
  cfg.batch_size = 16;
  auto model = make_model("featurizer", 1);
  auto manual = model->clone();
  const auto history = train(*model, d, cfg);
  CHECK(history.epochs.size() == 1);

  const auto order = epoch_order(d.size(), cfg.seed, 0, true);
  const double lr = manual->default_learning_rate(d.size());
  for (std::size_t start = 0; start < d.size(); start += cfg.batch_size) {
    std::vector<WeightedExample> batch;
    for (std::size_t k = start; k < std::min(d.size(), start + cfg.batch_size); ++k)
      batch.push_back({d[order[k]].sample().text, *d[order[k]].pseudo_score(), 1.0 / 100.0, order[k]});
    manual->train_step(batch, lr);
  }
  CHECK(manual->snapshot() == model->snapshot());
}

TEST_CASE("alpha 1 follows the plain trainer exactly") {
  std::vector<double> truth;
  const Dataset d = corpus_with_labels(120, 5, &truth);
  TrainConfig cfg;
  cfg.alpha = 1.0;
  cfg.epochs = 4;
  cfg.seed = 3;
  auto adaptive = make_model("featurizer", 8);
  auto plain = adaptive->clone();
  std::vector<ModelSnapshot> trajectory;
  TrainCallbacks cb;
  cb.on_step = [&](std::size_t, std::size_t, const RegressionModel& m) { trajectory.push_back(m.snapshot()); };
  train(*adaptive, d, cfg, cb);

  std::size_t step = 0;
  const double lr = plain->default_learning_rate(d.size());
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = epoch_order(d.size(), cfg.seed, epoch, true);
    for (std::size_t start = 0; start < d.size(); start += cfg.batch_size, ++step) {
      std::vector<WeightedExample> batch;
      for (std::size_t k = start; k < std::min(d.size(), start + cfg.batch_size); ++k)
        batch.push_back({d[order[k]].sample().text, *d[order[k]].pseudo_score(), 1.0 / 120.0, order[k]});
      plain->train_step(batch, lr);
      REQUIRE(step < trajectory.size());
      CHECK(plain->snapshot() == trajectory[step]);
    }
  }
  CHECK(step == trajectory.size());
}

TEST_CASE("weight invariants hold after every epoch") {
  std::vector<double> truth;
  const Dataset d = corpus_with_labels(90, 6, &truth);
  for (double alpha : {0.0, 0.05, 0.3, 0.55, 1.0}) {
    CAPTURE(alpha);
    TrainConfig cfg;
    cfg.alpha = alpha;
    cfg.epochs = 4;
    auto model = make_model("featurizer", 2);
    const auto h = train(*model, d, cfg);
    REQUIRE(h.epochs.size() == 4);
    for (const auto& e : h.epochs) {
      const double sum = std::accumulate(e.next_weights.begin(), e.next_weights.end(), 0.0);
      CHECK(std::abs(sum - 1.0) <= 1e-9);
      std::set<double> distinct(e.next_weights.begin(), e.next_weights.end());
      for (double w : distinct) CHECK(w >= 0.0);
      if (!e.degenerate) {
        CHECK(distinct.size() <= 2);
        CHECK(e.clean_set_size == clean_set_size(alpha, d.size()));
      } else {
        CHECK(e.next_weights == e.weights);
      }
    }
    CHECK(h.any_degenerate() == (clean_set_size(alpha, d.size()) == 0));
  }
}

TEST_CASE("excluded samples can come back") {
  std::vector<double> truth;
  const Dataset clean = corpus_with_labels(80, 9, &truth);
  const Dataset d = attach_noisy_labels(clean, truth, 0.3, 9).dataset;
  TrainConfig cfg;
  cfg.alpha = 0.5;
  cfg.epochs = 6;
  cfg.batch_size = 8;
  auto model = make_model("featurizer", 0);
  const auto h = train(*model, d, cfg);
  std::size_t reentries = 0;
  for (const auto& e : h.epochs)
    for (std::size_t i = 0; i < d.size(); ++i) reentries += e.weights[i] == 0.0 && e.next_weights[i] > 0.0;
  CHECK(reentries > 0);
}

TEST_CASE("offset-corrupted labels end up with zero weight") {
  // 30% of labels move by 2 points (down when the move up would leave the
  // scale); after 5 epochs at alpha 0.7 the excluded set should be mostly
  // those samples.
  std::vector<double> truth;
  const Dataset clean = corpus_with_labels(500, 21, &truth);
  std::vector<double> labels = truth;
  std::vector<bool> corrupted(labels.size(), false);
  std::vector<std::size_t> idx(labels.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 gen(21);
  std::shuffle(idx.begin(), idx.end(), gen);
  for (std::size_t k = 0; k < 150; ++k) {
    const std::size_t i = idx[k];
    labels[i] = labels[i] + 2.0 <= 5.0 ? labels[i] + 2.0 : labels[i] - 2.0;
    corrupted[i] = true;
  }
  const Dataset d = attach_noisy_labels(clean, labels, 0.0, 0).dataset;
  TrainConfig cfg;
  cfg.alpha = 0.7;
  cfg.epochs = 5;
  auto model = make_model("featurizer", 21);
  const auto h = train(*model, d, cfg);
  const auto& w = h.epochs.back().next_weights;
  std::size_t zero = 0, hit = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == 0.0) {
      ++zero;
      hit += corrupted[i];
    }
  REQUIRE(zero == 150);
  CHECK(static_cast<double>(hit) / static_cast<double>(zero) >= 0.8);
}

TEST_CASE("training is deterministic and reports history") {
  std::vector<double> truth;
  const Dataset d = corpus_with_labels(70, 13, &truth);
  TrainConfig cfg;
  cfg.alpha = 0.3;
  cfg.epochs = 3;
  cfg.seed = 99;
  auto a = make_model("featurizer", 5);
  auto b = make_model("featurizer", 5);
  const auto ha = train(*a, d, cfg);
  const auto hb = train(*b, d, cfg);
  CHECK(a->snapshot() == b->snapshot());
  CHECK(history_csv(ha) == history_csv(hb));
  CHECK(loss_matrix_csv(ha, d) == loss_matrix_csv(hb, d));
  const std::string csv = history_csv(ha);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.rfind("epoch,mean_weighted_loss,clean_set_size,churn_fraction", 0) == 0);
}

TEST_CASE("invalid configs and data") {
  auto m = make_model("featurizer", 0);
  TrainConfig cfg;
  cfg.alpha = 1.2;
  CHECK_THROWS_AS(train(*m, gramscore::testing::labeled({"A b."}, {3.0}), cfg), ConfigError);
  cfg.alpha = 0.3;
  cfg.epochs = 0;
  CHECK_THROWS_AS(train(*m, gramscore::testing::labeled({"A b."}, {3.0}), cfg), ConfigError);
  cfg.epochs = 1;
  const Dataset unlabeled({gramscore::testing::make_record("u", "No label.")}, SplitTag::kTrain);
  CHECK_THROWS_AS(train(*m, unlabeled, cfg), ValidationError);
  cfg.learning_rate = 1e6;
  try {
    train(*m, gramscore::testing::labeled({"A b c.", "D e."}, {5.0, 1.0}), cfg);
  } catch (const TrainingDivergence& e) {
    CHECK(std::string(e.what()).find("epoch 0") != std::string::npos);
  }
}
