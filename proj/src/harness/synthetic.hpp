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

#ifndef GRAMSCORE_HARNESS_SYNTHETIC_HPP
#define GRAMSCORE_HARNESS_SYNTHETIC_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dataset/dataset.hpp"
#include "error_injection/inject.hpp"

namespace gramscore {

// Seeded generator of grammatical template text. Each sentence picks a
// subject, one of the lexicon's verbs with a matching object, and a time
// frame (past, present habit, future, or neutral) that fixes the tense.
// A paragraph keeps one style: mixed, terse (short clauses, many verbs), or
// detailed (prepositional phrases).
class TemplateWriter {
 public:
  enum class Style { kMixed, kTerse, kDetailed };

  explicit TemplateWriter(std::uint64_t seed) : gen_(seed) {}
  std::string sentence(Style style = Style::kMixed);
  // Style drawn per paragraph: mixed 50%, terse 25%, detailed 25%.
  std::string paragraph(std::size_t sentences);

 private:
  std::mt19937_64 gen_;
};

struct SyntheticOptions {
  std::size_t train_size = 2000;
  std::size_t test_size = 500;
  std::uint64_t seed = 0;
  std::size_t min_sentences = 4;
  std::size_t max_sentences = 8;
  double clean_fraction = 0.15;
  std::size_t max_error_types = 3;
  double min_intensity = 0.02;
  double max_intensity = 0.15;
  std::size_t responses_per_candidate = 2;
};

struct SyntheticItem {
  Sample sample;
  std::vector<ErrorSpec> specs;
  std::size_t affected_words = 0;
  std::size_t original_words = 0;
  // affected words / original word count
  double injected_density = 0.0;
  double true_score = 5.0;
};

struct SyntheticCorpus {
  Dataset train;  // unlabeled
  Dataset test;   // rated, single rating = true score
  std::vector<SyntheticItem> train_items;
  std::vector<SyntheticItem> test_items;
};

// True score of a response: rubric_score_from_density(injected_density).
SyntheticCorpus generate_corpus(const SyntheticOptions& options);

struct NoisyLabels {
  Dataset dataset;
  std::vector<bool> corrupted;
};

// Attaches labels[i] as pseudo scores, then replaces a `rate` fraction
// (exactly round(rate * N) samples, chosen by seed) with uniform draws on
// [1, 5].
NoisyLabels attach_noisy_labels(const Dataset& dataset, const std::vector<double>& labels, double rate,
                                std::uint64_t seed, const std::string& model_name = "synthetic");

}  // namespace gramscore

#endif  // GRAMSCORE_HARNESS_SYNTHETIC_HPP
