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

#ifndef GRAMSCORE_TEXT_MARKERS_HPP
#define GRAMSCORE_TEXT_MARKERS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error_injection/error_type.hpp"
#include "text/lexicon.hpp"

namespace gramscore {

// Per-word view used by both the detectors and the injection rules.
struct WordInfo {
  std::size_t offset = 0;
  std::string_view raw;
  std::string_view core;
  std::string lower;  // lowercase core
  lexicon::Tag tag = lexicon::Tag::kUnknown;
  std::optional<lexicon::VerbForm> verb;
  bool terminal = false;       // trailing . ! or ?
  bool comma = false;          // trailing , ; or :
  bool has_trailing = false;   // any trailing punctuation
  bool sentence_start = false;
  bool clause_start = false;
  bool capitalized = false;
  std::size_t sentence = 0;    // sentence ordinal
};

std::vector<WordInfo> analyze_words(std::string_view text);

// A verb that carries tense: not governed by will/to or an auxiliary.
bool is_finite_verb(const std::vector<WordInfo>& words, std::size_t i);

struct MarkerCounts {
  std::array<double, kErrorTypeCount> counts{};
  std::size_t words = 0;

  double total() const;
  // Markers per word; zero for empty text.
  double density(ErrorType type) const;
  double total_density() const;
};

// Heuristic error-marker detectors, one per error type. Each is a pure
// function of the text; see the README section on the featurizer backend for
// what each detector looks for.
MarkerCounts count_markers(std::string_view text);

// Rubric score implied by an error density (errors per word):
// 1 + 4 * exp(-density / kDensityScale). Clean text scores 5.
inline constexpr double kDensityScale = 0.2;
double rubric_score_from_density(double density);

}  // namespace gramscore

#endif  // GRAMSCORE_TEXT_MARKERS_HPP
