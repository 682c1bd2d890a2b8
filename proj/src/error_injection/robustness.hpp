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

#ifndef GRAMSCORE_ERROR_INJECTION_ROBUSTNESS_HPP
#define GRAMSCORE_ERROR_INJECTION_ROBUSTNESS_HPP

#include <string>
#include <vector>

#include "error_injection/suite.hpp"
#include "model/regression_model.hpp"

namespace gramscore {

struct RobustnessRow {
  ErrorType type = ErrorType::kFillerWord;
  double intensity = 0.0;
  double mean_pred = 0.0;
  // mean of predict(original) - predict(corrupted); positive means the score fell
  double mean_drop = 0.0;
  double pct_impacted = 0.0;  // percent, 0..100
  std::size_t n = 0;
};

// One row per (type, intensity) cell plus an intensity-0 row per type even
// when the suite has no 0 intensity. A sample is impacted when its
// prediction moves by more than impact_threshold. Raw model outputs are used
// so that drops near the top of the scale are not hidden by clamping.
std::vector<RobustnessRow> robustness_report(const RegressionModel& model, const SyntheticSuite& suite,
                                             double impact_threshold = 0.25);

// Columns: error_type, intensity, mean_pred, mean_drop, pct_impacted, n.
std::string robustness_csv(const std::vector<RobustnessRow>& rows);

}  // namespace gramscore

#endif  // GRAMSCORE_ERROR_INJECTION_ROBUSTNESS_HPP
