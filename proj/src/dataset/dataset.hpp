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

#ifndef GRAMSCORE_DATASET_DATASET_HPP
#define GRAMSCORE_DATASET_DATASET_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gramscore {

inline constexpr double kMinScore = 1.0;
inline constexpr double kMaxScore = 5.0;

enum class Modality { kSpoken, kWritten };
enum class SplitTag { kTrain, kTest };

std::string_view to_string(Modality m);
Modality parse_modality(std::string_view s);

struct Sample {
  std::string id;
  std::string candidate_id;
  std::string text;
  Modality modality = Modality::kWritten;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Provenance {
  std::string model;
  std::string prompt_hash;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// One line of a corpus file. A record with a non-empty ratings list is a
// rated sample; its gold score is always the mean of the raw ratings.
class Record {
 public:
  Record() = default;
  explicit Record(Sample sample, std::vector<double> ratings = {},
                  std::optional<double> pseudo_score = std::nullopt,
                  std::optional<Provenance> provenance = std::nullopt);

  const Sample& sample() const noexcept { return sample_; }
  const std::vector<double>& ratings() const noexcept { return ratings_; }
  bool rated() const noexcept { return !ratings_.empty(); }
  // Throws ValidationError for unrated records.
  double gold_score() const;

  const std::optional<double>& pseudo_score() const noexcept { return pseudo_score_; }
  const std::optional<Provenance>& provenance() const noexcept { return provenance_; }

  Record with_pseudo_label(double score, Provenance provenance) const;
  Record without_pseudo_label() const;

  friend bool operator==(const Record&, const Record&) = default;

 private:
  Sample sample_;
  std::vector<double> ratings_;
  double gold_ = 0.0;
  std::optional<double> pseudo_score_;
  std::optional<Provenance> provenance_;
};

// Ordered, index-addressable corpus. Index i is the canonical sample index
// used by the trainer's positional weight vector.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<Record> records, SplitTag split);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const Record& operator[](std::size_t i) const { return records_[i]; }
  const std::vector<Record>& records() const noexcept { return records_; }
  SplitTag split() const noexcept { return split_; }

  bool fully_rated() const;
  bool fully_pseudo_labeled() const;

  std::vector<std::string> texts() const;
  std::vector<double> gold_scores() const;
  // Throws ValidationError naming the first unlabeled sample.
  std::vector<double> pseudo_scores() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Record> records_;
  SplitTag split_ = SplitTag::kTrain;
};

Record parse_record(std::string_view json_line, std::size_t line_number);
std::string serialize_record(const Record& record);

Dataset load_dataset(const std::string& path, bool expect_ratings,
                     SplitTag split = SplitTag::kTrain);
void save_dataset(const Dataset& dataset, const std::string& path);

// Candidate ids that appear in both splits.
std::set<std::string> check_split_integrity(const Dataset& train, const Dataset& test);

// Bins start at 1.0 and step by bin_width up to and including the bin that
// holds 5.0. Gold scores are used for rated records, pseudo scores otherwise.
std::vector<std::pair<double, std::size_t>> score_histogram(const Dataset& dataset,
                                                            double bin_width);
std::vector<std::pair<double, std::size_t>> score_histogram(const std::vector<double>& scores,
                                                            double bin_width);

}  // namespace gramscore

#endif  // GRAMSCORE_DATASET_DATASET_HPP
