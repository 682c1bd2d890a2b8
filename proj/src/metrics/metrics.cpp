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

#include "metrics/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "core/error.hpp"
#include "core/strings.hpp"

namespace gramscore {

namespace {

constexpr int kLevels = 5;

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw ValidationError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
  if (a == 0) throw ValidationError(std::string(what) + ": empty input");
}

double pearson(std::span<const double> x, std::span<const double> y, const char* what) {
  check_lengths(x.size(), y.size(), what);
  if (x.size() < 2) throw UndefinedValueError(std::string(what) + " needs at least two values");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedValueError(std::string(what) + " is undefined for constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

std::string_view to_string(RoundingPolicy p) {
  return p == RoundingPolicy::kNone ? "none" : "nearest_integer_clamped";
}

RoundingPolicy parse_rounding_policy(std::string_view s) {
  if (s == "nearest_integer_clamped") return RoundingPolicy::kNearestIntegerClamped;
  if (s == "none") return RoundingPolicy::kNone;
  throw ConfigError("unknown rounding policy '" + std::string(s) + "'");
}

int score_level(double score) {
  if (!std::isfinite(score)) throw ValidationError("score is not finite");
  const double r = std::round(score);  // half away from zero
  return static_cast<int>(std::clamp(r, kMinScore, kMaxScore));
}

std::vector<int> to_levels(std::span<const double> scores, RoundingPolicy policy) {
  std::vector<int> out;
  out.reserve(scores.size());
  for (double s : scores) {
    if (policy == RoundingPolicy::kNearestIntegerClamped) {
      out.push_back(score_level(s));
    } else {
      if (s != std::floor(s) || s < kMinScore || s > kMaxScore)
        throw ValidationError("rounding policy 'none' requires integer scores in [1, 5], got " + format_score(s));
      out.push_back(static_cast<int>(s));
    }
  }
  return out;
}

double qwk(std::span<const int> pred, std::span<const int> gold) {
  check_lengths(pred.size(), gold.size(), "qwk");
  std::array<std::array<double, kLevels>, kLevels> observed{};
  std::array<double, kLevels> row{}, col{};
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] < 1 || pred[i] > kLevels || gold[i] < 1 || gold[i] > kLevels)
      throw ValidationError("qwk levels must lie in 1..5");
    observed[pred[i] - 1][gold[i] - 1] += 1.0;
    row[pred[i] - 1] += 1.0;
    col[gold[i] - 1] += 1.0;
  }
  const double n = static_cast<double>(pred.size());
  double num = 0.0, den = 0.0;
  for (int i = 0; i < kLevels; ++i) {
    for (int j = 0; j < kLevels; ++j) {
      const double w = static_cast<double>((i - j) * (i - j)) / ((kLevels - 1) * (kLevels - 1));
      num += w * observed[i][j];
      den += w * row[i] * col[j] / n;
    }
  }
  if (num == 0.0 && den == 0.0) return 1.0;
  if (den == 0.0) throw UndefinedValueError("qwk is undefined: expected disagreement is zero");
  return 1.0 - num / den;
}

double qwk(std::span<const double> pred, std::span<const double> gold, RoundingPolicy policy) {
  check_lengths(pred.size(), gold.size(), "qwk");
  const auto p = to_levels(pred, policy);
  const auto g = to_levels(gold, policy);
  return qwk(std::span<const int>(p), std::span<const int>(g));
}

double plcc(std::span<const double> pred, std::span<const double> gold) { return pearson(pred, gold, "plcc"); }

std::vector<double> mid_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double srcc(std::span<const double> pred, std::span<const double> gold) {
  check_lengths(pred.size(), gold.size(), "srcc");
  const auto rp = mid_ranks(pred);
  const auto rg = mid_ranks(gold);
  return pearson(rp, rg, "srcc");
}

double rmse(std::span<const double> pred, std::span<const double> gold) {
  check_lengths(pred.size(), gold.size(), "rmse");
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) s += (pred[i] - gold[i]) * (pred[i] - gold[i]);
  return std::sqrt(s / static_cast<double>(pred.size()));
}

double clamp_score(double s) { return std::clamp(s, kMinScore, kMaxScore); }

AgreementReport agreement(std::span<const double> predictions, std::span<const double> gold, RoundingPolicy policy) {
  check_lengths(predictions.size(), gold.size(), "evaluate");
  std::vector<double> clamped(predictions.begin(), predictions.end());
  for (double& p : clamped) {
    if (!std::isfinite(p)) throw ValidationError("prediction is not finite");
    p = clamp_score(p);
  }
  AgreementReport r;
  r.n = clamped.size();
  r.rounding_policy = policy;
  r.qwk = qwk(clamped, gold, policy);
  try {
    r.plcc = plcc(clamped, gold);
  } catch (const UndefinedValueError&) {
  }
  try {
    r.srcc = srcc(clamped, gold);
  } catch (const UndefinedValueError&) {
  }
  r.rmse = rmse(clamped, gold);
  return r;
}

AgreementReport evaluate(const RegressionModel& model, const Dataset& testset, RoundingPolicy policy) {
  if (testset.empty()) throw ValidationError("cannot evaluate on an empty test set");
  const auto gold = testset.gold_scores();
  const auto preds = model.predict_batch(testset.texts());
  return agreement(preds, gold, policy);
}

std::string format_metric(const std::optional<double>& v) { return v ? format_fixed(*v, 6) : "undefined"; }

std::string report_csv_header() { return "n,qwk,plcc,srcc,rmse,rounding_policy"; }

std::string report_csv_row(const AgreementReport& r) {
  return std::to_string(r.n) + "," + format_fixed(r.qwk, 6) + "," + format_metric(r.plcc) + "," +
         format_metric(r.srcc) + "," + format_fixed(r.rmse, 6) + "," + std::string(to_string(r.rounding_policy));
}

std::string report_csv(const AgreementReport& r) { return report_csv_header() + "\n" + report_csv_row(r) + "\n"; }

std::string report_text(const AgreementReport& r) {
  std::string s;
  s += "samples          " + std::to_string(r.n) + "\n";
  s += "QWK              " + format_fixed(r.qwk, 4) + "\n";
  s += "PLCC             " + (r.plcc ? format_fixed(*r.plcc, 4) : std::string("undefined")) + "\n";
  s += "SRCC             " + (r.srcc ? format_fixed(*r.srcc, 4) : std::string("undefined")) + "\n";
  s += "RMSE             " + format_fixed(r.rmse, 4) + "\n";
  s += "rounding policy  " + std::string(to_string(r.rounding_policy)) + "\n";
  return s;
}

}  // namespace gramscore
