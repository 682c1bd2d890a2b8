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

#include "dataset/dataset.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "core/error.hpp"
#include "core/strings.hpp"

namespace gramscore {

using nlohmann::json;

namespace {

bool in_score_range(double v) { return std::isfinite(v) && v >= kMinScore && v <= kMaxScore; }

}  // namespace

std::string_view to_string(Modality m) { return m == Modality::kSpoken ? "spoken" : "written"; }

Modality parse_modality(std::string_view s) {
  if (s == "spoken") return Modality::kSpoken;
  if (s == "written") return Modality::kWritten;
  throw ValidationError("modality must be \"spoken\" or \"written\", got \"" + std::string(s) + "\"");
}

Record::Record(Sample sample, std::vector<double> ratings, std::optional<double> pseudo_score,
               std::optional<Provenance> provenance)
    : sample_(std::move(sample)),
      ratings_(std::move(ratings)),
      pseudo_score_(pseudo_score),
      provenance_(std::move(provenance)) {
  if (sample_.id.empty()) throw ValidationError("sample id must be non-empty");
  if (word_count(sample_.text) == 0)
    throw ValidationError("sample '" + sample_.id + "' has empty text");
  for (double r : ratings_) {
    if (!in_score_range(r))
      throw ValidationError("sample '" + sample_.id + "' has rating outside [1, 5]");
  }
  if (!ratings_.empty())
    gold_ = std::accumulate(ratings_.begin(), ratings_.end(), 0.0) /
            static_cast<double>(ratings_.size());
  if (pseudo_score_ && !in_score_range(*pseudo_score_))
    throw ValidationError("sample '" + sample_.id + "' has pseudo_score outside [1, 5]");
}

double Record::gold_score() const {
  if (ratings_.empty()) throw ValidationError("sample '" + sample_.id + "' has no ratings");
  return gold_;
}

Record Record::with_pseudo_label(double score, Provenance provenance) const {
  return Record(sample_, ratings_, score, std::move(provenance));
}

Record Record::without_pseudo_label() const { return Record(sample_, ratings_); }

Dataset::Dataset(std::vector<Record> records, SplitTag split)
    : records_(std::move(records)), split_(split) {
  std::unordered_set<std::string> seen;
  for (const auto& r : records_) {
    if (!seen.insert(r.sample().id).second)
      throw ValidationError("duplicate sample id '" + r.sample().id + "'");
  }
}

bool Dataset::fully_rated() const {
  for (const auto& r : records_)
    if (!r.rated()) return false;
  return true;
}

bool Dataset::fully_pseudo_labeled() const {
  for (const auto& r : records_)
    if (!r.pseudo_score()) return false;
  return true;
}

std::vector<std::string> Dataset::texts() const {
  std::vector<std::string> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.sample().text);
  return out;
}

std::vector<double> Dataset::gold_scores() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.gold_score());
  return out;
}

std::vector<double> Dataset::pseudo_scores() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) {
    if (!r.pseudo_score())
      throw ValidationError("sample '" + r.sample().id + "' has no pseudo_score");
    out.push_back(*r.pseudo_score());
  }
  return out;
}

Record parse_record(std::string_view json_line, std::size_t line_number) {
  const std::string where = "line " + std::to_string(line_number);
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": malformed JSON (" + e.what() + ")", line_number);
  }
  if (!j.is_object()) throw ParseError(where + ": record is not a JSON object", line_number);
  auto req_string = [&](const char* key) -> std::string {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
      throw ParseError(where + ": missing or non-string field \"" + key + "\"", line_number);
    return it->get<std::string>();
  };
  try {
    Sample s;
    s.id = req_string("id");
    s.candidate_id = req_string("candidate_id");
    s.text = req_string("text");
    s.modality = parse_modality(req_string("modality"));

    std::vector<double> ratings;
    if (auto it = j.find("ratings"); it != j.end() && !it->is_null()) {
      if (!it->is_array()) throw ParseError(where + ": \"ratings\" must be an array", line_number);
      for (const auto& v : *it) {
        if (!v.is_number()) throw ParseError(where + ": non-numeric rating", line_number);
        ratings.push_back(v.get<double>());
      }
    }
    std::optional<double> pseudo;
    if (auto it = j.find("pseudo_score"); it != j.end() && !it->is_null()) {
      if (!it->is_number()) throw ParseError(where + ": non-numeric pseudo_score", line_number);
      pseudo = it->get<double>();
    }
    std::optional<Provenance> prov;
    if (auto it = j.find("pseudo_provenance"); it != j.end() && !it->is_null()) {
      if (!it->is_object())
        throw ParseError(where + ": \"pseudo_provenance\" must be an object", line_number);
      prov = Provenance{it->value("model", ""), it->value("prompt_hash", "")};
    }
    return Record(std::move(s), std::move(ratings), pseudo, std::move(prov));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

std::string serialize_record(const Record& record) {
  const Sample& s = record.sample();
  std::string out = "{\"id\":" + json(s.id).dump() + ",\"candidate_id\":" + json(s.candidate_id).dump() +
                    ",\"text\":" + json(s.text).dump() + ",\"modality\":\"" +
                    std::string(to_string(s.modality)) + "\"";
  if (record.rated()) {
    out += ",\"ratings\":[";
    for (std::size_t i = 0; i < record.ratings().size(); ++i) {
      if (i) out += ',';
      out += format_score(record.ratings()[i]);
    }
    out += ']';
  }
  if (record.pseudo_score()) out += ",\"pseudo_score\":" + format_score(*record.pseudo_score());
  if (record.provenance()) {
    out += ",\"pseudo_provenance\":{\"model\":" + json(record.provenance()->model).dump() +
           ",\"prompt_hash\":" + json(record.provenance()->prompt_hash).dump() + "}";
  }
  out += '}';
  return out;
}

Dataset load_dataset(const std::string& path, bool expect_ratings, SplitTag split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset '" + path + "'");
  std::vector<Record> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    Record r = parse_record(line, line_number);
    if (expect_ratings && !r.rated())
      throw ValidationError("line " + std::to_string(line_number) + ": sample '" +
                            r.sample().id + "' has no ratings");
    records.push_back(std::move(r));
  }
  return Dataset(std::move(records), split);
}

void save_dataset(const Dataset& dataset, const std::string& path) {
  std::string out;
  for (const auto& r : dataset.records()) {
    out += serialize_record(r);
    out += '\n';
  }
  write_file(path, out);
}

std::set<std::string> check_split_integrity(const Dataset& train, const Dataset& test) {
  std::set<std::string> train_ids;
  for (const auto& r : train.records()) train_ids.insert(r.sample().candidate_id);
  std::set<std::string> overlap;
  for (const auto& r : test.records())
    if (train_ids.count(r.sample().candidate_id)) overlap.insert(r.sample().candidate_id);
  return overlap;
}

std::vector<std::pair<double, std::size_t>> score_histogram(const std::vector<double>& scores,
                                                            double bin_width) {
  if (!(bin_width > 0.0)) throw ValidationError("bin_width must be positive");
  if (scores.empty()) throw ValidationError("score histogram needs at least one score");
  const auto bins = static_cast<std::size_t>(std::floor((kMaxScore - kMinScore) / bin_width + 1e-9)) + 1;
  std::vector<std::pair<double, std::size_t>> hist(bins);
  for (std::size_t b = 0; b < bins; ++b) hist[b] = {kMinScore + static_cast<double>(b) * bin_width, 0};
  for (double s : scores) {
    if (!in_score_range(s)) throw ValidationError("score outside [1, 5] in histogram input");
    auto b = static_cast<std::size_t>(std::floor((s - kMinScore) / bin_width + 1e-9));
    if (b >= bins) b = bins - 1;
    ++hist[b].second;
  }
  return hist;
}

std::vector<std::pair<double, std::size_t>> score_histogram(const Dataset& dataset,
                                                            double bin_width) {
  std::vector<double> scores;
  scores.reserve(dataset.size());
  for (const auto& r : dataset.records()) {
    if (r.rated()) {
      scores.push_back(r.gold_score());
    } else if (r.pseudo_score()) {
      scores.push_back(*r.pseudo_score());
    } else {
      throw ValidationError("sample '" + r.sample().id + "' has neither ratings nor pseudo_score");
    }
  }
  return score_histogram(scores, bin_width);
}

}  // namespace gramscore
