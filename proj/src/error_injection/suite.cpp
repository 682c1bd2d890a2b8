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

#include "error_injection/suite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"

namespace gramscore {

namespace {

std::vector<double> normalized_intensities(const std::vector<double>& intensities) {
  if (intensities.empty()) throw ValidationError("at least one intensity is required");
  std::vector<double> out = intensities;
  for (double x : out)
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("intensity " + format_score(x) + " is outside [0, 1]");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ErrorType> normalized_types(const std::vector<ErrorType>& types) {
  if (types.empty()) throw ValidationError("at least one error type is required");
  std::vector<ErrorType> out;
  for (ErrorType t : types)
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

}  // namespace

std::uint64_t suite_seed(std::uint64_t seed, const std::string& sample_id, ErrorType type) {
  return derive_seed(seed, {fnv1a64(sample_id), static_cast<std::uint64_t>(index_of(type))});
}

SyntheticSuite build_synthetic_suite(const Dataset& dataset, double score_threshold,
                                     const std::vector<double>& intensities, const std::vector<ErrorType>& types,
                                     std::uint64_t seed) {
  if (!(score_threshold >= 1.0 && score_threshold <= 5.0))
    throw ValidationError("score threshold " + format_score(score_threshold) + " is outside [1, 5]");
  if (!dataset.fully_rated()) throw ValidationError("suite construction needs gold scores on every sample");

  SyntheticSuite suite;
  suite.intensities = normalized_intensities(intensities);
  suite.types = normalized_types(types);
  for (const Record& r : dataset.records()) {
    if (r.gold_score() < score_threshold) continue;
    suite.sample_ids.push_back(r.sample().id);
    suite.originals.push_back(r.sample().text);
  }
  if (suite.sample_ids.empty())
    throw ValidationError("no sample has a gold score >= " + format_score(score_threshold));

  suite.records.reserve(suite.types.size() * suite.intensities.size() * suite.sample_ids.size());
  for (ErrorType type : suite.types) {
    for (double intensity : suite.intensities) {
      for (std::size_t i = 0; i < suite.sample_ids.size(); ++i) {
        const ErrorSpec spec{type, intensity, suite_seed(seed, suite.sample_ids[i], type)};
        suite.records.push_back(SuiteRecord{suite.sample_ids[i], type, intensity, inject(suite.originals[i], spec)});
      }
    }
  }
  return suite;
}

std::string suite_to_jsonl(const SyntheticSuite& suite) {
  std::string out;
  for (const SuiteRecord& rec : suite.records) {
    nlohmann::json edits = nlohmann::json::array();
    for (const Edit& e : rec.result.edits)
      edits.push_back({{"position", e.position}, {"rule_id", e.rule_id}, {"before", e.before}, {"after", e.after}});
    const nlohmann::json j = {{"sample_id", rec.sample_id},
                              {"error_type", std::string(to_string(rec.type))},
                              {"intensity", rec.intensity},
                              {"original", rec.result.original},
                              {"corrupted", rec.result.corrupted},
                              {"edits", edits},
                              {"achieved_intensity", rec.result.achieved_intensity}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

SyntheticSuite suite_from_jsonl(const std::string& text) {
  SyntheticSuite suite;
  std::map<std::string, std::size_t> sample_index;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    SuiteRecord rec;
    try {
      const auto j = nlohmann::json::parse(line);
      rec.sample_id = j.at("sample_id").get<std::string>();
      rec.type = parse_error_type(j.at("error_type").get<std::string>());
      rec.intensity = j.at("intensity").get<double>();
      rec.result.original = j.at("original").get<std::string>();
      rec.result.corrupted = j.at("corrupted").get<std::string>();
      rec.result.achieved_intensity = j.at("achieved_intensity").get<double>();
      for (const auto& e : j.at("edits"))
        rec.result.edits.push_back(Edit{e.at("position").get<std::size_t>(), e.at("rule_id").get<std::string>(),
                                        e.at("before").get<std::string>(), e.at("after").get<std::string>()});
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError("suite line " + std::to_string(line_no) + ": " + ex.what(), line_no);
    }
    if (apply_edits(rec.result.original, rec.result.edits) != rec.result.corrupted)
      throw ValidationError("suite line " + std::to_string(line_no) + ": edit log does not reproduce the corrupted text");
    rec.result.word_count = word_count(rec.result.original);

    auto [it, inserted] = sample_index.emplace(rec.sample_id, suite.sample_ids.size());
    if (inserted) {
      suite.sample_ids.push_back(rec.sample_id);
      suite.originals.push_back(rec.result.original);
    } else if (suite.originals[it->second] != rec.result.original) {
      throw ValidationError("suite line " + std::to_string(line_no) + ": sample " + rec.sample_id +
                            " has two different originals");
    }
    if (std::find(suite.types.begin(), suite.types.end(), rec.type) == suite.types.end())
      suite.types.push_back(rec.type);
    if (std::find(suite.intensities.begin(), suite.intensities.end(), rec.intensity) == suite.intensities.end())
      suite.intensities.push_back(rec.intensity);
    suite.records.push_back(std::move(rec));
  }
  std::sort(suite.intensities.begin(), suite.intensities.end());
  return suite;
}

}  // namespace gramscore
