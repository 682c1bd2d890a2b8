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

// Small closed vocabulary shared by the synthetic corpus generator, the
// error-injection rules and the error-marker detectors. All lookups take
// lowercase word cores.

#ifndef GRAMSCORE_TEXT_LEXICON_HPP
#define GRAMSCORE_TEXT_LEXICON_HPP

#include <optional>
#include <span>
#include <string_view>

namespace gramscore::lexicon {

enum class Tag {
  kUnknown,
  kDet,       // the, a, every, last ...
  kPoss,      // my, his, our, their, your
  kSubjPron,  // i, he, she, we, they
  kObjPron,   // me, him, us, them
  kHer,       // object or possessive
  kPronAny,   // you, it
  kPrep,
  kVerb,
  kAux,       // will
  kNoun,
  kAdj,
  kAdv,
  kConj,
  kFiller,
  kNum,
};

enum FormBits : unsigned {
  kBase = 1u << 0,
  kThird = 1u << 1,
  kPast = 1u << 2,
  kPart = 1u << 3,
  kGerund = 1u << 4,
  kBogus = 1u << 5,
};

struct VerbEntry {
  std::string_view base, third, past, part, gerund;
  std::string_view bogus;    // over-regularised past ("goed"); empty for regular verbs
  std::string_view prep;     // governed preposition, empty for transitive verbs
  std::string_view objects;  // space-separated object nouns used by the generator
  bool takes_person = false; // object may be a person / object pronoun
};

struct VerbForm {
  const VerbEntry* entry = nullptr;
  unsigned forms = 0;
};

std::span<const VerbEntry> verbs();
// Present/past forms of "be" are reported with entry == be_entry().
const VerbEntry& be_entry();
std::optional<VerbForm> lookup_verb(std::string_view lower);
bool is_be_form(std::string_view lower);
bool is_have_form(std::string_view lower);

Tag tag_of(std::string_view lower);
bool in_lexicon(std::string_view lower);
// Not a lexicon word, but one letter substitution or adjacent transposition
// away from one, with the first letter unchanged.
bool near_lexicon_word(std::string_view lower);

bool is_time_noun(std::string_view lower);
// Preposition that heads a phrase ending in this time noun ("in" the morning,
// "on" Monday, "at" night); empty when the noun has no fixed preposition.
std::string_view time_noun_prep(std::string_view lower);
bool is_weekday(std::string_view lower);
bool is_person_noun(std::string_view lower);

enum class TimeFrame { kNone, kPast, kPresent, kFuture };
// Time adverbs/determiners that fix the tense of their sentence.
TimeFrame time_frame_of(std::string_view lower);

std::span<const std::string_view> prepositions();
std::span<const std::string_view> fillers();
std::span<const std::string_view> adjectives();
std::span<const std::string_view> predicate_adjectives();
std::span<const std::string_view> person_nouns();

// Subject/object/possessive confusion partner of a pronoun; empty if none.
std::string_view pronoun_partner(std::string_view lower);

}  // namespace gramscore::lexicon

#endif  // GRAMSCORE_TEXT_LEXICON_HPP
