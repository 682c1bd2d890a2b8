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

#ifndef GRAMSCORE_METRICS_METRICS_HPP
#define GRAMSCORE_METRICS_METRICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dataset/dataset.hpp"
#include "model/regression_model.hpp"

namespace gramscore {

enum class RoundingPolicy { kNearestIntegerClamped, kNone };

std::string_view to_string(RoundingPolicy p);
RoundingPolicy parse_rounding_policy(std::string_view s);

// Round half away from zero, then clamp to [1, 5].
int score_level(double score);

// Maps scores to integer levels 1..5. kNone requires integer-valued inputs
// already in range and throws ValidationError otherwise.
std::vector<int> to_levels(std::span<const double> scores, RoundingPolicy policy);

// Quadratic weighted kappa over levels 1..5. Returns 1.0 when both the
// observed and expected weighted sums are zero.
double qwk(std::span<const int> pred, std::span<const int> gold);
double qwk(std::span<const double> pred, std::span<const double> gold,
           RoundingPolicy policy = RoundingPolicy::kNearestIntegerClamped);

// Throw UndefinedValueError for constant input or fewer than two values.
double plcc(std::span<const double> pred, std::span<const double> gold);
double srcc(std::span<const double> pred, std::span<const double> gold);

double rmse(std::span<const double> pred, std::span<const double> gold);

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> mid_ranks(std::span<const double> values);

struct AgreementReport {
  std::size_t n = 0;
  double qwk = 0.0;
  // Empty when undefined (zero variance).
  std::optional<double> plcc;
  std::optional<double> srcc;
  double rmse = 0.0;
  RoundingPolicy rounding_policy = RoundingPolicy::kNearestIntegerClamped;
};

// Predictions are clamped to [1, 5] for every metric; QWK additionally maps
// both sides to levels under the policy.
AgreementReport agreement(std::span<const double> predictions, std::span<const double> gold,
                          RoundingPolicy policy = RoundingPolicy::kNearestIntegerClamped);
AgreementReport evaluate(const RegressionModel& model, const Dataset& testset,
                         RoundingPolicy policy = RoundingPolicy::kNearestIntegerClamped);

double clamp_score(double s);

std::string report_csv_header();
std::string report_csv_row(const AgreementReport& r);
std::string report_csv(const AgreementReport& r);
std::string report_text(const AgreementReport& r);
// "undefined" for an empty optional.
std::string format_metric(const std::optional<double>& v);

}  // namespace gramscore

#endif  // GRAMSCORE_METRICS_METRICS_HPP
