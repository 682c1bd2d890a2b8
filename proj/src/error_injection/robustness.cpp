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

#include "error_injection/robustness.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "core/error.hpp"
#include "core/strings.hpp"

namespace gramscore {

namespace {

struct Cell {
  double pred_sum = 0.0;
  double drop_sum = 0.0;
  std::size_t impacted = 0;
  std::size_t n = 0;
};

}  // namespace

std::vector<RobustnessRow> robustness_report(const RegressionModel& model, const SyntheticSuite& suite,
                                             double impact_threshold) {
  if (suite.empty()) throw ValidationError("robustness report needs a non-empty suite");
  if (!(impact_threshold >= 0.0)) throw ValidationError("impact threshold must be non-negative");

  const std::vector<double> base = model.predict_batch(suite.originals);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < suite.sample_ids.size(); ++i) index.emplace(suite.sample_ids[i], i);

  std::vector<std::string> corrupted;
  corrupted.reserve(suite.size());
  for (const auto& rec : suite.records) corrupted.push_back(rec.result.corrupted);
  const std::vector<double> preds = model.predict_batch(corrupted);

  std::map<std::pair<std::size_t, double>, Cell> cells;
  for (std::size_t r = 0; r < suite.size(); ++r) {
    const SuiteRecord& rec = suite.records[r];
    const auto it = index.find(rec.sample_id);
    if (it == index.end()) throw ValidationError("suite record refers to unknown sample " + rec.sample_id);
    const double drop = base[it->second] - preds[r];
    Cell& c = cells[{index_of(rec.type), rec.intensity}];
    c.pred_sum += preds[r];
    c.drop_sum += drop;
    if (std::fabs(drop) > impact_threshold) ++c.impacted;
    ++c.n;
  }

  double base_sum = 0.0;
  for (double b : base) base_sum += b;
  const RobustnessRow baseline_template{ErrorType::kFillerWord, 0.0, base_sum / static_cast<double>(base.size()),
                                        0.0, 0.0, base.size()};

  std::vector<RobustnessRow> rows;
  for (ErrorType type : suite.types) {
    if (!cells.count({index_of(type), 0.0})) {
      RobustnessRow row = baseline_template;
      row.type = type;
      rows.push_back(row);
    }
    for (double intensity : suite.intensities) {
      const auto it = cells.find({index_of(type), intensity});
      if (it == cells.end()) continue;
      const Cell& c = it->second;
      const double n = static_cast<double>(c.n);
      rows.push_back(RobustnessRow{type, intensity, c.pred_sum / n, c.drop_sum / n,
                                   100.0 * static_cast<double>(c.impacted) / n, c.n});
    }
  }
  return rows;
}

std::string robustness_csv(const std::vector<RobustnessRow>& rows) {
  std::string out = "error_type,intensity,mean_pred,mean_drop,pct_impacted,n\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.type)) + "," + format_score(r.intensity) + "," + format_fixed(r.mean_pred) + "," +
           format_fixed(r.mean_drop) + "," + format_fixed(r.pct_impacted, 2) + "," + std::to_string(r.n) + "\n";
  }
  return out;
}

}  // namespace gramscore
