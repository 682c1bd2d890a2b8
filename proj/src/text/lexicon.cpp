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

#include "text/lexicon.hpp"

#include <array>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace gramscore::lexicon {

namespace {

constexpr std::array<VerbEntry, 22> kVerbs = {{
    {"go", "goes", "went", "gone", "going", "goed", "to", "park market station office library beach museum", false},
    {"walk", "walks", "walked", "walked", "walking", "", "to", "park market station office library beach", false},
    {"drive", "drives", "drove", "driven", "driving", "drived", "to", "office station beach market airport", false},
    {"arrive", "arrives", "arrived", "arrived", "arriving", "", "at", "station office airport hotel", false},
    {"listen", "listens", "listened", "listened", "listening", "", "to", "music radio teacher podcast", false},
    {"talk", "talks", "talked", "talked", "talking", "", "with", "friend neighbor teacher brother sister", false},
    {"wait", "waits", "waited", "waited", "waiting", "", "for", "bus train friend taxi", false},
    {"look", "looks", "looked", "looked", "looking", "", "at", "picture map sky menu", false},
    {"cook", "cooks", "cooked", "cooked", "cooking", "", "", "dinner lunch breakfast soup", false},
    {"eat", "eats", "ate", "eaten", "eating", "eated", "", "lunch dinner breakfast apple sandwich", false},
    {"write", "writes", "wrote", "written", "writing", "writed", "", "letter report story email", false},
    {"take", "takes", "took", "taken", "taking", "taked", "", "bus train photo course", false},
    {"see", "sees", "saw", "seen", "seeing", "seed", "", "movie doctor friend sky", false},
    {"make", "makes", "made", "made", "making", "maked", "", "dinner plan cake list", false},
    {"buy", "buys", "bought", "bought", "buying", "buyed", "", "bread ticket book gift", false},
    {"visit", "visits", "visited", "visited", "visiting", "", "", "museum grandmother friend neighbor", true},
    {"watch", "watches", "watched", "watched", "watching", "", "", "movie game show match", false},
    {"play", "plays", "played", "played", "playing", "", "", "football piano chess guitar", false},
    {"study", "studies", "studied", "studied", "studying", "", "", "history math science art", false},
    {"help", "helps", "helped", "helped", "helping", "", "", "friend neighbor brother sister", true},
    {"finish", "finishes", "finished", "finished", "finishing", "", "", "homework report project book", false},
    {"clean", "cleans", "cleaned", "cleaned", "cleaning", "", "", "kitchen room house garden", false},
}};

constexpr VerbEntry kBe = {"be", "is", "was", "been", "being", "", "", "", false};

constexpr std::array<std::string_view, 11> kPreps = {"in", "on",   "at", "to",    "for", "with",
                                                     "from", "by", "about", "of", "into"};
constexpr std::array<std::string_view, 3> kFillers = {"um", "uh", "like"};
constexpr std::array<std::string_view, 12> kAdjectives = {
    "new", "old", "small", "big", "quiet", "busy", "long", "short", "nice", "local", "favorite", "beautiful"};
constexpr std::array<std::string_view, 8> kPredicateAdjectives = {
    "happy", "tired", "busy", "ready", "calm", "hungry", "excited", "late"};
constexpr std::array<std::string_view, 10> kPersonNouns = {
    "friend", "neighbor", "teacher", "brother", "sister", "mother", "father", "colleague", "cousin", "grandmother"};
constexpr std::array<std::string_view, 7> kWeekdays = {"monday", "tuesday", "wednesday", "thursday",
                                                       "friday", "saturday", "sunday"};

struct Tables {
  std::unordered_map<std::string, VerbForm> verb_forms;
  std::unordered_map<std::string, Tag> tags;
  std::unordered_set<std::string> words;
};

void add_form(Tables& t, std::string_view surface, const VerbEntry* e, unsigned bit) {
  if (surface.empty()) return;
  auto& vf = t.verb_forms[std::string(surface)];
  vf.entry = e;
  vf.forms |= bit;
}

void add_tag(Tables& t, std::string_view w, Tag tag) {
  t.tags.emplace(std::string(w), tag);
  t.words.emplace(w);
}

void add_words(Tables& t, std::string_view list, Tag tag) {
  std::size_t i = 0;
  while (i < list.size()) {
    auto j = list.find(' ', i);
    if (j == std::string_view::npos) j = list.size();
    add_tag(t, list.substr(i, j - i), tag);
    i = j + 1;
  }
}

Tables build() {
  Tables t;
  for (const auto& v : kVerbs) {
    add_form(t, v.base, &v, kBase);
    add_form(t, v.third, &v, kThird);
    add_form(t, v.past, &v, kPast);
    add_form(t, v.part, &v, kPart);
    add_form(t, v.gerund, &v, kGerund);
    add_form(t, v.bogus, &v, kBogus);
  }
  add_form(t, "be", &kBe, kBase);
  add_form(t, "am", &kBe, kBase);
  add_form(t, "are", &kBe, kBase);
  add_form(t, "is", &kBe, kThird);
  add_form(t, "was", &kBe, kPast);
  add_form(t, "were", &kBe, kPast);
  add_form(t, "been", &kBe, kPart);
  add_form(t, "being", &kBe, kGerund);
  for (const auto& [surface, vf] : t.verb_forms) {
    t.tags.emplace(surface, Tag::kVerb);
    // Over-regularised forms are deliberately kept out of the word list so
    // they also read as misspellings.
    if (!(vf.forms == kBogus)) t.words.insert(surface);
  }

  add_words(t, "the a an this that every each some last next", Tag::kDet);
  add_words(t, "my his our their your", Tag::kPoss);
  add_words(t, "i he she we they", Tag::kSubjPron);
  add_words(t, "me him us them", Tag::kObjPron);
  add_words(t, "her", Tag::kHer);
  add_words(t, "you it", Tag::kPronAny);
  for (auto p : kPreps) add_tag(t, p, Tag::kPrep);
  add_words(t, "will", Tag::kAux);
  add_words(t, "and but because so", Tag::kConj);
  add_words(t, "um uh like", Tag::kFiller);
  add_words(t, "know", Tag::kUnknown);
  add_words(t, "two three", Tag::kNum);
  add_words(t, "yesterday today tomorrow usually often always sometimes ago", Tag::kAdv);
  for (auto a : kAdjectives) add_tag(t, a, Tag::kAdj);
  for (auto a : kPredicateAdjectives) add_tag(t, a, Tag::kAdj);
  for (auto n : kPersonNouns) add_tag(t, n, Tag::kNoun);
  for (auto d : kWeekdays) add_tag(t, d, Tag::kNoun);
  add_words(t, "morning evening afternoon night week weekend year day days family", Tag::kNoun);
  for (const auto& v : kVerbs) add_words(t, v.objects, Tag::kNoun);
  return t;
}

const Tables& tables() {
  static const Tables t = build();
  return t;
}

}  // namespace

std::span<const VerbEntry> verbs() { return kVerbs; }
const VerbEntry& be_entry() { return kBe; }

std::optional<VerbForm> lookup_verb(std::string_view lower) {
  const auto& m = tables().verb_forms;
  auto it = m.find(std::string(lower));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

bool is_be_form(std::string_view w) {
  return w == "am" || w == "is" || w == "are" || w == "was" || w == "were" || w == "be" ||
         w == "been" || w == "being";
}

bool is_have_form(std::string_view w) { return w == "have" || w == "has" || w == "had"; }

Tag tag_of(std::string_view lower) {
  const auto& m = tables().tags;
  auto it = m.find(std::string(lower));
  return it == m.end() ? Tag::kUnknown : it->second;
}

bool in_lexicon(std::string_view lower) { return tables().words.count(std::string(lower)) > 0; }

bool near_lexicon_word(std::string_view lower) {
  if (lower.size() < 2 || in_lexicon(lower)) return false;
  std::string w(lower);
  for (std::size_t i = 1; i + 1 < w.size(); ++i) {
    std::swap(w[i], w[i + 1]);
    const bool hit = in_lexicon(w);
    std::swap(w[i], w[i + 1]);
    if (hit) return true;
  }
  for (std::size_t i = 1; i < w.size(); ++i) {
    const char keep = w[i];
    for (char c = 'a'; c <= 'z'; ++c) {
      if (c == keep) continue;
      w[i] = c;
      if (in_lexicon(w)) return true;
    }
    w[i] = keep;
  }
  return false;
}

bool is_weekday(std::string_view w) {
  for (auto d : kWeekdays)
    if (d == w) return true;
  return false;
}

std::string_view time_noun_prep(std::string_view w) {
  if (w == "morning" || w == "evening" || w == "afternoon") return "in";
  if (w == "night") return "at";
  if (is_weekday(w)) return "on";
  return {};
}

bool is_time_noun(std::string_view w) { return !time_noun_prep(w).empty(); }

bool is_person_noun(std::string_view w) {
  for (auto p : kPersonNouns)
    if (p == w) return true;
  return false;
}

TimeFrame time_frame_of(std::string_view w) {
  if (w == "yesterday" || w == "ago" || w == "last") return TimeFrame::kPast;
  if (w == "usually" || w == "often" || w == "always" || w == "sometimes" || w == "every")
    return TimeFrame::kPresent;
  if (w == "tomorrow" || w == "next") return TimeFrame::kFuture;
  return TimeFrame::kNone;
}

std::span<const std::string_view> prepositions() { return kPreps; }
std::span<const std::string_view> fillers() { return kFillers; }
std::span<const std::string_view> adjectives() { return kAdjectives; }
std::span<const std::string_view> predicate_adjectives() { return kPredicateAdjectives; }
std::span<const std::string_view> person_nouns() { return kPersonNouns; }

std::string_view pronoun_partner(std::string_view w) {
  if (w == "i") return "me";
  if (w == "me") return "i";
  if (w == "he") return "him";
  if (w == "him") return "he";
  if (w == "she") return "her";
  if (w == "her") return "she";
  if (w == "we") return "us";
  if (w == "us") return "we";
  if (w == "they") return "them";
  if (w == "them") return "they";
  if (w == "my") return "me";
  if (w == "his") return "him";
  if (w == "our") return "us";
  if (w == "their") return "them";
  return {};
}

}  // namespace gramscore::lexicon
