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

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "model/encoder_model.hpp"
#include "model/featurizer_model.hpp"
#include "support.hpp"

using namespace gramscore;
using gramscore::testing::TempDir;

namespace {

const std::vector<std::string> kTexts = {
    "The children played in the garden after school.",
    "She go to the market yesterday and buyed apples.",
    "um I like, you know, reading books books in the evening",
    "We will visiting our grandmother on Sunday.",
    "He don't know where is the station.",
    "They walked to the park with their dog at night.",
    "My brother he is work in a bank since two years.",
    "I am agree with you about this this idea.",
    "Tomorrow we went to the beach.",
    "The teacher explained the lesson clearly.",
};

std::vector<WeightedExample> random_batch(std::mt19937_64& gen, std::size_t size) {
  std::uniform_real_distribution<double> target(1.0, 5.0), weight(0.0, 1.0);
  std::vector<WeightedExample> batch;
  for (std::size_t i = 0; i < size; ++i)
    batch.push_back({kTexts[gen() % kTexts.size()], target(gen), weight(gen), i});
  return batch;
}

double relative_error(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6}); }

}  // namespace

TEST_CASE("featurizer with zero weights predicts its bias") {
  FeaturizerModel m;
  m.set_parameters(FeatureVector{}, 3.0);
  for (const auto& t : kTexts) CHECK(m.predict(t) == 3.0);
  CHECK_THROWS_AS(m.predict("   \n\t "), ValidationError);
}

TEST_CASE("features are a pure function of the text") {
  for (const auto& t : kTexts) CHECK(extract_features(t) == extract_features(std::string(t)));
  const auto clean = extract_features("The children played in the garden after school.");
  for (std::size_t i = 3; i < kFeatureCount; ++i) CHECK(clean[i] == 0.0);
}

TEST_CASE("snapshot and restore reproduce predictions") {
  for (const char* backend : {"featurizer", "encoder"}) {
    CAPTURE(backend);
    auto m = make_model(backend, 7);
    std::mt19937_64 gen(1);
    const auto batch = random_batch(gen, 8);
    m->train_step(batch, 0.01);
    const auto snap = m->snapshot();
    const double before = m->predict(kTexts[1]);
    m->train_step(batch, 0.01);
    CHECK(m->predict(kTexts[1]) != before);
    m->restore(snap);
    CHECK(m->predict(kTexts[1]) == before);
    const auto copy = model_from_snapshot(snap);
    CHECK(copy->predict(kTexts[1]) == before);
  }
}

TEST_CASE("predict_batch agrees with predict") {
  for (const char* backend : {"featurizer", "encoder"}) {
    auto m = make_model(backend, 3);
    const std::vector<std::string> five(kTexts.begin(), kTexts.begin() + 5);
    const auto batch = m->predict_batch(five);
    REQUIRE(batch.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) CHECK(batch[k] == m->predict(five[k]));
  }
}

TEST_CASE("train_step loss and zero weights") {
  SUBCASE("all weights zero leave the parameters alone") {
    for (const char* backend : {"featurizer", "encoder"}) {
      auto m = make_model(backend, 5);
      std::mt19937_64 gen(2);
      auto batch = random_batch(gen, 6);
      for (auto& ex : batch) ex.weight = 0.0;
      const auto snap = m->snapshot();
      CHECK(m->train_step(batch, 0.1) == 0.0);
      CHECK(m->snapshot() == snap);
    }
  }
  SUBCASE("single example arithmetic") {
    FeaturizerModel m;
    m.set_parameters(FeatureVector{}, 2.0);
    const std::vector<WeightedExample> one = {{kTexts[0], 4.0, 1.0, 0}};
    CHECK(m.train_step(one, 0.01) == 4.0);
  }
  SUBCASE("uniform weight 1 gives plain MSE") {
    auto m = make_model("featurizer", 9);
    std::mt19937_64 gen(4);
    auto batch = random_batch(gen, 7);
    double mse = 0.0;
    for (auto& ex : batch) {
      ex.weight = 1.0;
      const double d = m->predict(ex.text) - ex.target;
      mse += d * d;
    }
    mse /= 7.0;
    CHECK(m->train_step(batch, 0.0) == doctest::Approx(mse).epsilon(1e-14));
  }
  SUBCASE("invalid batches") {
    FeaturizerModel m;
    CHECK_THROWS_AS(m.train_step({}, 0.1), ValidationError);
    const std::vector<WeightedExample> negative = {{kTexts[0], 4.0, -1.0, 0}};
    CHECK_THROWS_AS(m.train_step(negative, 0.1), ValidationError);
  }
  SUBCASE("divergence names the batch") {
    FeaturizerModel m;
    const std::vector<WeightedExample> bad = {{kTexts[0], 4.0, 1.0, 3}, {kTexts[1], 1e308, 1.0, 8}};
    try {
      m.train_step(bad, 1.0);
      FAIL("expected divergence");
    } catch (const TrainingDivergence& e) {
      CHECK(e.batch_indices() == std::vector<std::size_t>{3, 8});
    }
  }
}

TEST_CASE("a zero-weight example contributes no gradient") {
  // The batch loss divides by |B|, so dropping an example also changes the
  // divisor. Its content must not matter, and dropping it is equivalent to
  // rescaling the step by |B| / (|B| - 1).
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 20; ++trial) {
    auto batch = random_batch(gen, 5);
    batch[2].weight = 0.0;
    auto swapped = batch;
    swapped[2].text = kTexts[(trial + 3) % kTexts.size()];
    swapped[2].target = 1.0 + trial % 5;
    std::vector<WeightedExample> dropped = {batch[0], batch[1], batch[3], batch[4]};

    const FeaturizerConfig cfg{static_cast<std::uint64_t>(trial)};
    FeaturizerModel a(cfg), b(cfg), c(cfg);
    a.train_step(batch, 0.05);
    b.train_step(swapped, 0.05);
    c.train_step(dropped, 0.05 * 4.0 / 5.0);
    CHECK(a.weights() == b.weights());
    CHECK(a.bias() == b.bias());
    for (std::size_t i = 0; i < kFeatureCount; ++i) CHECK(a.weights()[i] == doctest::Approx(c.weights()[i]).epsilon(1e-12));
    for (const auto& t : kTexts) CHECK(a.predict(t) == doctest::Approx(c.predict(t)).epsilon(1e-12));
  }
}

TEST_CASE("featurizer gradient matches central differences") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> param(-0.5, 0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    FeaturizerModel m;
    FeatureVector w;
    for (double& x : w) x = param(gen);
    m.set_parameters(w, 3.0 + param(gen));
    const auto batch = random_batch(gen, 1 + trial);
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
      FeaturizerModel plus(m.config()), minus(m.config());
      plus.set_parameters(wp, bp);
      minus.set_parameters(wm, bm);
      const double numeric = (plus.batch_loss(batch) - minus.batch_loss(batch)) / (2 * h);
      const double analytic = i < kFeatureCount ? g.weights[i] : g.bias;
      worst = std::max(worst, relative_error(analytic, numeric));
    }
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("encoder gradient matches central differences") {
  EncoderConfig cfg;
  cfg.vocab_size = 97;
  cfg.dim = 8;
  cfg.heads = 2;
  cfg.ff_dim = 12;
  cfg.layers = 2;
  cfg.max_tokens = 16;
  cfg.seed = 11;
  for (const char* pooling : {"mean", "first"}) {
    CAPTURE(pooling);
    cfg.pooling = pooling;
    EncoderModel m(cfg);
    std::mt19937_64 gen(8);
    const auto batch = random_batch(gen, 3);
    const auto g = m.gradient(batch);
    const auto p = m.parameters();
    REQUIRE(g.size() == p.size());
    REQUIRE(p.size() == m.parameter_count());
    const double h = 1e-5;
    double worst = 0.0;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < p.size(); i += 1 + gen() % 7) {
      auto pp = p, pm = p;
      pp[i] += h;
      pm[i] -= h;
      m.set_parameters(pp);
      const double lp = m.batch_loss(batch);
      m.set_parameters(pm);
      const double lm = m.batch_loss(batch);
      const double numeric = (lp - lm) / (2 * h);
      if (std::abs(numeric) < 1e-7 && std::abs(g[i]) < 1e-7) continue;  // untouched rows
      worst = std::max(worst, relative_error(g[i], numeric));
      ++checked;
    }
    m.set_parameters(p);
    CHECK(checked > 100);
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("encoder truncates from the end") {
  std::string longer;
  for (int i = 0; i < 300; ++i) longer += "word" + std::to_string(i) + " ";
  const auto ids = encoder_tokenize(longer, 4096, 192);
  CHECK(ids.size() == 192);
  CHECK(ids == encoder_tokenize(longer.substr(0, longer.find("word192")), 4096, 192));
}

TEST_CASE("model files round-trip with metadata") {
  TempDir dir;
  auto m = make_model("featurizer", 21);
  save_model(*m, dir.file("model.json"), {{"seed", 21}});
  const auto back = load_model(dir.file("model.json"));
  CHECK(back->backend() == "featurizer");
  for (const auto& t : kTexts) CHECK(back->predict(t) == m->predict(t));
  CHECK_THROWS_AS(make_model("bert", 0), ConfigError);
}
