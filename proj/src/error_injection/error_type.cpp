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

#include "error_injection/error_type.hpp"

#include <string>

#include "core/error.hpp"

namespace gramscore {

namespace {

constexpr std::array<std::string_view, kErrorTypeCount> kNames = {
    "filler_word", "redundant_phrase", "word_order",  "verb_form",   "preposition",
    "tense",       "subject_verb_agreement", "spelling", "punctuation", "pronoun",
};

}  // namespace

std::string_view to_string(ErrorType type) { return kNames[index_of(type)]; }

ErrorType parse_error_type(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<ErrorType>(i);
  throw ValidationError("unknown error type '" + std::string(name) + "'");
}

}  // namespace gramscore
