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

#include "text/markers.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "core/strings.hpp"

namespace gramscore {

using lexicon::Tag;
using lexicon::TimeFrame;

namespace {

bool all_alpha(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
  return true;
}

bool contains_any(std::string_view s, std::string_view chars) {
  return s.find_first_of(chars) != std::string_view::npos;
}

// Words i and i+1 are in the same clause span (no punctuation between).
bool joined(const std::vector<WordInfo>& w, std::size_t i) {
  return i + 1 < w.size() && !w[i].has_trailing && w[i].sentence == w[i + 1].sentence;
}

bool is_subject_pronoun(std::string_view l) {
  return l == "i" || l == "he" || l == "she" || l == "we" || l == "they";
}

bool is_object_pronoun(std::string_view l) {
  return l == "me" || l == "him" || l == "us" || l == "them";
}

bool bad_bigram(Tag a, Tag b) {
  switch (a) {
    case Tag::kDet:
    case Tag::kPoss:
      return b == Tag::kVerb || b == Tag::kPrep || b == Tag::kDet || b == Tag::kPoss ||
             b == Tag::kSubjPron || b == Tag::kObjPron || b == Tag::kConj || b == Tag::kAux ||
             b == Tag::kAdv || b == Tag::kHer;
    case Tag::kAdj:
      return b == Tag::kDet || b == Tag::kPoss || b == Tag::kSubjPron || b == Tag::kAux ||
             b == Tag::kHer;
    case Tag::kSubjPron:
      return b == Tag::kDet || b == Tag::kPoss || b == Tag::kPrep || b == Tag::kNoun ||
             b == Tag::kAdj || b == Tag::kSubjPron || b == Tag::kObjPron || b == Tag::kConj ||
             b == Tag::kHer;
    case Tag::kPrep:
      return b == Tag::kVerb || b == Tag::kPrep || b == Tag::kAux || b == Tag::kConj;
    case Tag::kAux:
      return b == Tag::kDet || b == Tag::kPoss || b == Tag::kNoun || b == Tag::kPrep ||
             b == Tag::kSubjPron || b == Tag::kObjPron || b == Tag::kAdj || b == Tag::kAux ||
             b == Tag::kConj || b == Tag::kHer;
    case Tag::kVerb:
      return b == Tag::kSubjPron || b == Tag::kVerb || b == Tag::kAux;
    case Tag::kNoun:
      return b == Tag::kNoun || b == Tag::kAdj || b == Tag::kSubjPron;
    case Tag::kConj:
      return b == Tag::kVerb || b == Tag::kPrep || b == Tag::kConj || b == Tag::kAux;
    case Tag::kObjPron:
      return b == Tag::kDet || b == Tag::kSubjPron || b == Tag::kObjPron;
    default:
      return false;
  }
}

bool dangling_at_sentence_end(Tag t) {
  return t == Tag::kDet || t == Tag::kPoss || t == Tag::kPrep || t == Tag::kAux ||
         t == Tag::kSubjPron || t == Tag::kConj;
}

double filler_markers(const std::vector<WordInfo>& w) {
  double n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].tag == Tag::kFiller) ++n;
    if (w[i].lower == "you" && i + 1 < w.size() && w[i + 1].lower == "know") ++n;
  }
  return n;
}

// Repeated phrases of one to three words. Each word of a repeated copy
// counts once, and the copies are marked so the other detectors see the text
// with the repetition removed.
double redundant_markers(const std::vector<WordInfo>& w, std::vector<bool>& repeated) {
  double n = 0;
  repeated.assign(w.size(), false);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (repeated[i]) continue;
    for (std::size_t len = 1; len <= 3; ++len) {
      if (i + 2 * len > w.size()) break;
      bool same = true;
      for (std::size_t k = 0; k < len && same; ++k) {
        const auto& a = w[i + k].lower;
        same = !a.empty() && a == w[i + len + k].lower && !repeated[i + k];
      }
      if (same) {
        n += static_cast<double>(len);
        for (std::size_t k = 0; k < len; ++k) repeated[i + len + k] = true;
        break;
      }
    }
  }
  return n;
}

// Drops repeated copies; punctuation on a dropped word moves to the word
// before it so sentence and clause boundaries survive.
std::vector<WordInfo> without_repeats(const std::vector<WordInfo>& w, const std::vector<bool>& repeated) {
  std::vector<WordInfo> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!repeated[i]) {
      out.push_back(w[i]);
      continue;
    }
    if (out.empty()) continue;
    out.back().has_trailing |= w[i].has_trailing;
    out.back().terminal |= w[i].terminal;
    out.back().comma |= w[i].comma;
  }
  return out;
}

// "every", "next", "last" and "this" open time phrases that may follow any
// word ("happy every weekend").
bool time_phrase_start(std::string_view l) {
  return l == "every" || l == "next" || l == "last" || l == "this";
}

double word_order_markers(const std::vector<WordInfo>& w) {
  double n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (joined(w, i) && bad_bigram(w[i].tag, w[i + 1].tag) && !time_phrase_start(w[i + 1].lower)) ++n;
    if (w[i].terminal && dangling_at_sentence_end(w[i].tag)) ++n;
  }
  return n;
}

double verb_form_markers(const std::vector<WordInfo>& w) {
  double n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i].verb) continue;
    const unsigned f = w[i].verb->forms;
    const std::string* prev = (i > 0 && joined(w, i - 1)) ? &w[i - 1].lower : nullptr;
    const bool after_modal = prev && (*prev == "will" || *prev == "to");
    if (after_modal) {
      if (!(f & lexicon::kBase)) ++n;
    } else if (f == lexicon::kBogus) {
      ++n;
    } else if ((f & lexicon::kGerund) && !(prev && lexicon::is_be_form(*prev))) {
      ++n;
    } else if ((f & lexicon::kPart) && !(f & (lexicon::kPast | lexicon::kBase)) &&
               !(prev && lexicon::is_have_form(*prev))) {
      ++n;
    }
  }
  return n;
}

// Index of the subject word for the finite verb at i, skipping one adverb.
std::optional<std::size_t> subject_of(const std::vector<WordInfo>& w, std::size_t i) {
  if (i == 0 || !joined(w, i - 1)) return std::nullopt;
  std::size_t j = i - 1;
  if (w[j].tag == Tag::kAdv) {
    if (j == 0 || !joined(w, j - 1)) return std::nullopt;
    --j;
  }
  const Tag t = w[j].tag;
  if (t == Tag::kSubjPron || t == Tag::kPronAny || t == Tag::kNoun) return j;
  return std::nullopt;
}

double agreement_markers(const std::vector<WordInfo>& w) {
  double n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!is_finite_verb(w, i)) continue;
    auto s = subject_of(w, i);
    if (!s) continue;
    const std::string& subj = w[*s].lower;
    const std::string& v = w[i].lower;
    const unsigned f = w[i].verb->forms;
    const bool be = w[i].verb->entry == &lexicon::be_entry();
    const bool singular3 = subj == "he" || subj == "she" || subj == "it" || w[*s].tag == Tag::kNoun;
    if (subj == "i") {
      if (be ? (v == "is" || v == "are" || v == "were") : (f & lexicon::kThird) != 0) ++n;
    } else if (singular3) {
      if (be ? (v == "am" || v == "are" || v == "were")
             : ((f & lexicon::kBase) && !(f & (lexicon::kThird | lexicon::kPast))))
        ++n;
    } else {  // you, we, they
      if (be ? (v == "am" || v == "is" || v == "was") : (f & lexicon::kThird) != 0) ++n;
    }
  }
  return n;
}

double tense_markers(const std::vector<WordInfo>& w) {
  double n = 0;
  std::size_t begin = 0;
  while (begin < w.size()) {
    std::size_t end = begin;
    while (end < w.size() && w[end].sentence == w[begin].sentence) ++end;
    TimeFrame frame = TimeFrame::kNone;
    bool conflicting = false;
    for (std::size_t i = begin; i < end; ++i) {
      const TimeFrame f = lexicon::time_frame_of(w[i].lower);
      if (f == TimeFrame::kNone) continue;
      if (frame != TimeFrame::kNone && frame != f) conflicting = true;
      frame = f;
    }
    if (frame != TimeFrame::kNone && !conflicting) {
      for (std::size_t i = begin; i < end; ++i) {
        if (w[i].lower == "will") {
          if (frame != TimeFrame::kFuture) ++n;
          continue;
        }
        if (!is_finite_verb(w, i)) continue;
        const unsigned f = w[i].verb->forms;
        const bool past = (f & lexicon::kPast) && !(f & (lexicon::kBase | lexicon::kThird));
        const bool present = (f & (lexicon::kBase | lexicon::kThird)) && !(f & lexicon::kPast);
        if (frame == TimeFrame::kPast && present) ++n;
        if (frame == TimeFrame::kPresent && past) ++n;
        if (frame == TimeFrame::kFuture && (past || present)) ++n;
      }
    }
    begin = end;
  }
  return n;
}

double preposition_markers(const std::vector<WordInfo>& w) {
  double n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    // Governed preposition after a verb: wrong or missing.
    if (w[i].verb && !w[i].verb->entry->prep.empty() && !(w[i].verb->forms == lexicon::kBogus) &&
        joined(w, i)) {
      const auto& next = w[i + 1];
      if (next.tag == Tag::kPrep) {
        if (next.lower != w[i].verb->entry->prep) ++n;
      } else if (next.tag != Tag::kAdv) {
        ++n;
      }
      continue;
    }
    if (w[i].tag == Tag::kPrep) {
      const bool verb_checked = i > 0 && joined(w, i - 1) && w[i - 1].verb &&
                                !w[i - 1].verb->entry->prep.empty();
      if (verb_checked) continue;
      std::size_t h = i + 1;
      while (h < w.size() && h <= i + 3 && joined(w, h - 1) &&
             (w[h].tag == Tag::kDet || w[h].tag == Tag::kPoss || w[h].tag == Tag::kAdj ||
              (w[h].tag == Tag::kHer && h + 1 < w.size() && w[h + 1].tag == Tag::kNoun)))
        ++h;
      if (h >= w.size() || !joined(w, h - 1)) continue;
      const auto expected = lexicon::time_noun_prep(w[h].lower);
      if (!expected.empty()) {
        if (expected != w[i].lower) ++n;
      } else if (lexicon::is_person_noun(w[h].lower) || w[h].tag == Tag::kObjPron ||
                 w[h].tag == Tag::kHer) {
        if (w[i].lower != "with") ++n;
      }
      continue;
    }
    // Time noun phrase without its preposition ("cooks dinner the evening").
    if (lexicon::is_time_noun(w[i].lower)) {
      std::size_t s = i;
      while (s > 0 && joined(w, s - 1) &&
             (w[s - 1].tag == Tag::kDet || w[s - 1].tag == Tag::kAdj || w[s - 1].tag == Tag::kPoss))
        --s;
      if (s < i) {
        const auto& det = w[s].lower;
        if (det == "every" || det == "last" || det == "next" || det == "this" || det == "each") continue;
      }
      if (s == 0 || w[s].clause_start) continue;
      if (!(joined(w, s - 1) && w[s - 1].tag == Tag::kPrep)) ++n;
    }
  }
  return n;
}

bool is_question_opener(std::string_view l) {
  return l == "what" || l == "where" || l == "when" || l == "why" || l == "how" || l == "who" ||
         l == "do" || l == "does" || l == "did" || l == "is" || l == "are" || l == "can" ||
         l == "will";
}

double punctuation_markers(const std::vector<WordInfo>& w) {
  double n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool last = i + 1 == w.size();
    if (last) {
      if (!w[i].terminal) ++n;
    } else {
      const auto& next = w[i + 1];
      const bool proper = next.lower == "i" || lexicon::is_weekday(next.lower);
      if (!w[i].terminal && next.capitalized && !proper && all_alpha(next.core)) ++n;
      if (w[i].terminal && !next.capitalized && all_alpha(next.core)) ++n;
    }
    if (w[i].terminal && contains_any(trailing_punct(w[i].raw), "?")) {
      std::size_t s = i;
      while (s > 0 && !w[s].sentence_start) --s;
      if (!is_question_opener(w[s].lower)) ++n;
    }
    // Opening time adverbial must be followed by a comma.
    if (w[i].sentence_start) {
      const auto& l = w[i].lower;
      std::size_t close = i;
      if (l == "yesterday" || l == "usually" || l == "often" || l == "tomorrow" ||
          l == "sometimes" || l == "today") {
        close = i;
      } else if ((l == "every" || l == "last" || l == "next") && i + 1 < w.size()) {
        close = i + 1;
      } else if (l == "two" || l == "three") {
        close = i + 2;
      } else {
        close = w.size();
      }
      if (close < w.size() && !w[close].comma && !w[close].terminal) ++n;
    }
    // Clause-joining conjunction needs a comma before it.
    if (w[i].tag == Tag::kConj && w[i].lower != "because" && i > 0 && i + 1 < w.size() &&
        (w[i + 1].tag == Tag::kSubjPron || w[i + 1].tag == Tag::kPronAny) && !w[i - 1].has_trailing)
      ++n;
  }
  return n;
}

double pronoun_markers(const std::vector<WordInfo>& w) {
  double n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& l = w[i].lower;
    const bool prev_joined = i > 0 && joined(w, i - 1);
    const bool next_joined = joined(w, i);
    const Tag next = next_joined ? w[i + 1].tag : Tag::kUnknown;
    if (is_subject_pronoun(l)) {
      if (prev_joined && (w[i - 1].tag == Tag::kVerb || w[i - 1].tag == Tag::kPrep)) ++n;
      else if (next == Tag::kNoun || next == Tag::kAdj) ++n;
    } else if (is_object_pronoun(l)) {
      if (w[i].clause_start || next == Tag::kVerb || next == Tag::kAux) ++n;
      else if (next == Tag::kNoun || next == Tag::kAdj) ++n;
    } else if (l == "her") {
      if (w[i].clause_start ? next != Tag::kNoun && next != Tag::kAdj
                            : (next == Tag::kVerb || next == Tag::kAux))
        ++n;
    } else if (w[i].tag == Tag::kPoss) {
      if (w[i].terminal || next == Tag::kVerb || next == Tag::kPrep || next == Tag::kAux ||
          next == Tag::kConj)
        ++n;
    }
  }
  return n;
}

double spelling_markers(const std::vector<WordInfo>& w) {
  double n = 0;
  for (const auto& x : w) {
    if (!all_alpha(x.core)) continue;
    if (lexicon::near_lexicon_word(x.lower)) ++n;
  }
  return n;
}

}  // namespace

std::vector<WordInfo> analyze_words(std::string_view text) {
  const auto tokens = tokenize_words(text);
  std::vector<WordInfo> out;
  out.reserve(tokens.size());
  std::size_t sentence = 0;
  bool next_sentence_start = true;
  bool next_clause_start = true;
  for (const auto& t : tokens) {
    WordInfo w;
    w.offset = t.offset;
    w.raw = t.text;
    w.core = token_core(t.text);
    w.lower = to_lower(w.core);
    w.tag = lexicon::tag_of(w.lower);
    w.verb = lexicon::lookup_verb(w.lower);
    const auto trail = trailing_punct(t.text);
    w.has_trailing = !trail.empty();
    w.terminal = contains_any(trail, ".!?");
    w.comma = contains_any(trail, ",;:");
    w.capitalized = is_capitalized(w.core);
    w.sentence_start = next_sentence_start;
    w.clause_start = next_clause_start;
    w.sentence = sentence;
    next_sentence_start = w.terminal;
    next_clause_start = w.terminal || w.comma || w.tag == Tag::kConj;
    if (w.terminal) ++sentence;
    out.push_back(std::move(w));
  }
  return out;
}

bool is_finite_verb(const std::vector<WordInfo>& w, std::size_t i) {
  if (!w[i].verb) return false;
  const unsigned f = w[i].verb->forms;
  if (!(f & (lexicon::kBase | lexicon::kThird | lexicon::kPast))) return false;
  if (i > 0 && joined(w, i - 1)) {
    const auto& p = w[i - 1].lower;
    if (p == "will" || p == "to" || lexicon::is_be_form(p) || lexicon::is_have_form(p)) return false;
  }
  return true;
}

double MarkerCounts::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

double MarkerCounts::density(ErrorType type) const {
  return words == 0 ? 0.0 : counts[index_of(type)] / static_cast<double>(words);
}

double MarkerCounts::total_density() const {
  return words == 0 ? 0.0 : total() / static_cast<double>(words);
}

MarkerCounts count_markers(std::string_view text) {
  const auto all = analyze_words(text);
  MarkerCounts m;
  m.words = all.size();
  std::vector<bool> repeated;
  m.counts[index_of(ErrorType::kRedundantPhrase)] = redundant_markers(all, repeated);
  const auto w = without_repeats(all, repeated);
  m.counts[index_of(ErrorType::kFillerWord)] = filler_markers(w);
  m.counts[index_of(ErrorType::kWordOrder)] = word_order_markers(w);
  m.counts[index_of(ErrorType::kVerbForm)] = verb_form_markers(w);
  m.counts[index_of(ErrorType::kPreposition)] = preposition_markers(w);
  m.counts[index_of(ErrorType::kTense)] = tense_markers(w);
  m.counts[index_of(ErrorType::kSubjectVerbAgreement)] = agreement_markers(w);
  m.counts[index_of(ErrorType::kSpelling)] = spelling_markers(w);
  m.counts[index_of(ErrorType::kPunctuation)] = punctuation_markers(w);
  m.counts[index_of(ErrorType::kPronoun)] = pronoun_markers(w);
  return m;
}

double rubric_score_from_density(double density) {
  return 1.0 + 4.0 * std::exp(-std::max(0.0, density) / kDensityScale);
}

}  // namespace gramscore
