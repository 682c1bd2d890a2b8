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

#ifndef GRAMSCORE_ERROR_INJECTION_SUITE_HPP
#define GRAMSCORE_ERROR_INJECTION_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dataset/dataset.hpp"
#include "error_injection/inject.hpp"

namespace gramscore {

struct SuiteRecord {
  std::string sample_id;
  ErrorType type = ErrorType::kFillerWord;
  double intensity = 0.0;
  CorruptionResult result;  // carries the original text as well
};

// Corruptions of every selected sample at every (type, intensity) cell.
// Records are ordered by type, then intensity, then sample.
struct SyntheticSuite {
  std::vector<std::string> sample_ids;
  std::vector<std::string> originals;
  std::vector<ErrorType> types;
  std::vector<double> intensities;  // ascending, without duplicates
  std::vector<SuiteRecord> records;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
};

// Per-sample corruption seed. It does not depend on intensity, so a sample's
// edits at a lower intensity are a subset of its edits at a higher one.
std::uint64_t suite_seed(std::uint64_t seed, const std::string& sample_id, ErrorType type);

// Keeps samples whose gold score is >= threshold. Throws ValidationError when
// the dataset is unrated, the threshold is outside [1, 5], an intensity is
// outside [0, 1], or no sample clears the threshold.
SyntheticSuite build_synthetic_suite(const Dataset& dataset, double score_threshold,
                                     const std::vector<double>& intensities, const std::vector<ErrorType>& types,
                                     std::uint64_t seed);

// One JSON object per line: sample_id, error_type, intensity, original,
// corrupted, edits, achieved_intensity.
std::string suite_to_jsonl(const SyntheticSuite& suite);
// Inverse of suite_to_jsonl. Replays every edit log and throws ParseError or
// ValidationError when a line is malformed or an edit log disagrees with its
// corrupted text.
SyntheticSuite suite_from_jsonl(const std::string& text);

}  // namespace gramscore

#endif  // GRAMSCORE_ERROR_INJECTION_SUITE_HPP
