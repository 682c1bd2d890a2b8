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
#include <map>
#include <random>

#include "core/error.hpp"
#include "metrics/metrics.hpp"
#include "support.hpp"

using namespace gramscore;
using gramscore::testing::make_record;

namespace {

// Kappa straight from a 5x5 confusion matrix.
double kappa_oracle(const std::vector<int>& a, const std::vector<int>& b) {
  double o[5][5] = {}, ha[5] = {}, hb[5] = {};
  for (std::size_t i = 0; i < a.size(); ++i) {
    o[a[i] - 1][b[i] - 1] += 1;
    ha[a[i] - 1] += 1;
    hb[b[i] - 1] += 1;
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

class FixedModel final : public RegressionModel {
 public:
  explicit FixedModel(std::map<std::string, double> scores, double fallback = 3.0)
      : scores_(std::move(scores)), fallback_(fallback) {}
  std::string backend() const override { return "fixed"; }
  double predict(std::string_view text) const override {
    auto it = scores_.find(std::string(text));
    return it == scores_.end() ? fallback_ : it->second;
  }
  double train_step(std::span<const WeightedExample>, double) override { return 0.0; }
  ModelSnapshot snapshot() const override { return {}; }
  void restore(const ModelSnapshot&) override {}
  std::unique_ptr<RegressionModel> clone() const override { return std::make_unique<FixedModel>(*this); }
  double default_learning_rate(std::size_t) const override { return 1.0; }

 private:
  std::map<std::string, double> scores_;
  double fallback_;
};

}  // namespace

TEST_CASE("qwk examples") {
  const std::vector<double> ramp = {1, 2, 3, 4, 5};
  CHECK(qwk(ramp, ramp) == 1.0);
  CHECK(qwk(std::vector<double>{5, 1}, std::vector<double>{1, 5}) == -1.0);
  CHECK(kappa_oracle({5, 1}, {1, 5}) == -1.0);
  CHECK(qwk(std::vector<double>{3, 3, 3}, std::vector<double>{3, 3, 3}) == 1.0);
  CHECK_THROWS_AS(qwk(std::vector<double>{1, 2}, std::vector<double>{1}), ValidationError);
}

TEST_CASE("qwk matches the confusion-matrix oracle") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 40;
    std::vector<int> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = 1 + static_cast<int>(gen() % 5);
      b[i] = trial % 3 == 0 ? a[i] : 1 + static_cast<int>(gen() % 5);
    }
    CHECK(std::abs(qwk(a, b) - kappa_oracle(a, b)) <= 1e-9);
    CHECK(std::abs(qwk(a, b) - qwk(b, a)) <= 1e-12);
    CHECK(qwk(a, a) == 1.0);
  }
}

TEST_CASE("rounding to levels") {
  CHECK(score_level(4.5) == 5);
  CHECK(score_level(3.5) == 4);
  CHECK(score_level(2.5) == 3);
  CHECK(score_level(1.49) == 1);
  CHECK(score_level(0.2) == 1);
  CHECK(score_level(-3.0) == 1);
  CHECK(score_level(7.6) == 5);
  const std::vector<double> ints = {1, 3, 5};
  CHECK(to_levels(ints, RoundingPolicy::kNone) == std::vector<int>{1, 3, 5});
  CHECK_THROWS_AS(to_levels(std::vector<double>{4.5}, RoundingPolicy::kNone), ValidationError);
  CHECK_THROWS_AS(to_levels(std::vector<double>{6.0}, RoundingPolicy::kNone), ValidationError);
  CHECK(parse_rounding_policy("none") == RoundingPolicy::kNone);
  CHECK(to_string(RoundingPolicy::kNearestIntegerClamped) == "nearest_integer_clamped");
}

TEST_CASE("plcc") {
  const std::vector<double> g = {1.0, 2.5, 3.0, 4.2, 5.0};
  std::vector<double> affine, neg;
  for (double x : g) {
    affine.push_back(2.0 * x + 7.0);
    neg.push_back(-x);
  }
  CHECK(plcc(g, g) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plcc(affine, g) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plcc(neg, g) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(plcc(std::vector<double>{3, 3, 3}, std::vector<double>{1, 2, 3}), UndefinedValueError);
  CHECK_THROWS_AS(plcc(std::vector<double>{1}, std::vector<double>{2}), UndefinedValueError);
}

TEST_CASE("srcc") {
  const std::vector<double> g = {1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> mono, rev;
  for (double x : g) {
    mono.push_back(std::exp(x));
    rev.push_back(10.0 - x * x);
  }
  CHECK(srcc(mono, g) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(srcc(rev, g) == doctest::Approx(-1.0).epsilon(1e-12));
  // Ranks of [1,1,2] are [1.5,1.5,3]; Pearson against [1,2,3] is sqrt(3)/2.
  CHECK(mid_ranks(std::vector<double>{1, 1, 2}) == std::vector<double>{1.5, 1.5, 3.0});
  CHECK(srcc(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 3}) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(srcc(std::vector<double>{2, 2}, std::vector<double>{1, 2}), UndefinedValueError);
}

TEST_CASE("rmse") {
  const std::vector<double> a = {1.5, 2, 4};
  CHECK(rmse(a, a) == 0.0);
  CHECK(rmse(std::vector<double>{3}, std::vector<double>{5}) == 2.0);
  CHECK(rmse(std::vector<double>{1, 2}, std::vector<double>{2, 4}) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
  CHECK(rmse(std::vector<double>{1, 2}, std::vector<double>{1, 2.0000001}) > 0.0);
  CHECK_THROWS_AS(rmse(std::vector<double>{1}, std::vector<double>{1, 2}), ValidationError);
  CHECK_THROWS_AS(rmse(std::vector<double>{}, std::vector<double>{}), ValidationError);
}

TEST_CASE("evaluate") {
  std::vector<Record> recs;
  std::map<std::string, double> oracle;
  const std::vector<std::vector<double>> ratings = {{1}, {2, 3}, {4}, {5, 4}, {3}, {5}};
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    const std::string text = "Response number " + std::to_string(i) + ".";
    recs.push_back(make_record("t" + std::to_string(i), text, ratings[i]));
    oracle[text] = recs.back().gold_score();
  }
  const Dataset test(recs, SplitTag::kTest);

  const auto perfect = evaluate(FixedModel(oracle), test);
  CHECK(perfect.n == 6);
  CHECK(perfect.qwk == 1.0);
  CHECK(*perfect.plcc == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*perfect.srcc == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(perfect.rmse == 0.0);

  const auto constant = evaluate(FixedModel({}, 3.0), test);
  double ss = 0;
  for (const auto& r : recs) ss += (r.gold_score() - 3.0) * (r.gold_score() - 3.0);
  CHECK(constant.rmse == doctest::Approx(std::sqrt(ss / 6.0)).epsilon(1e-12));
  CHECK_FALSE(constant.plcc);
  CHECK_FALSE(constant.srcc);
  CHECK(report_csv_row(constant).find("undefined") != std::string::npos);

  // Out-of-range predictions are clamped before every metric.
  std::map<std::string, double> wild;
  for (const auto& [text, gold] : oracle) wild[text] = gold == 5.0 ? 9.0 : gold == 1.0 ? -4.0 : gold;
  const auto clamped = evaluate(FixedModel(wild), test);
  CHECK(clamped.rmse == 0.0);

  const Dataset unrated({make_record("u", "No rating.")}, SplitTag::kTest);
  CHECK_THROWS_AS(evaluate(FixedModel({}), unrated), ValidationError);
  CHECK_THROWS_AS(evaluate(FixedModel({}), Dataset({}, SplitTag::kTest)), ValidationError);
}

TEST_CASE("report rendering") {
  AgreementReport r;
  r.n = 3;
  r.qwk = 0.5;
  r.plcc = 0.25;
  r.rmse = 1.0;
  CHECK(report_csv(r) == "n,qwk,plcc,srcc,rmse,rounding_policy\n3,0.500000,0.250000,undefined,1.000000,"
                         "nearest_integer_clamped\n");
  CHECK(report_text(r).find("SRCC             undefined") != std::string::npos);
}
