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

#include "error_injection/inject.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <random>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"
#include "text/lexicon.hpp"
#include "text/markers.hpp"

namespace gramscore {

using lexicon::Tag;
using lexicon::TimeFrame;

namespace {

struct Site {
  std::size_t first = 0;  // words touched, inclusive
  std::size_t last = 0;
};

// Deterministic per-site random source.
class SiteRng {
 public:
  explicit SiteRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return state_ = splitmix64(state_); }
  double uniform() { return unit_interval(next()); }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

bool all_alpha(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
  return true;
}

bool joined(const std::vector<WordInfo>& w, std::size_t i) {
  return i + 1 < w.size() && !w[i].has_trailing && w[i].sentence == w[i + 1].sentence;
}

std::string with_core(const WordInfo& w, std::string_view new_core) {
  return std::string(leading_punct(w.raw)) + std::string(new_core) +
         std::string(w.has_trailing ? trailing_punct(w.raw) : std::string_view{});
}

std::string match_case(std::string_view replacement, const WordInfo& original) {
  if (replacement == "i") return "I";
  if (original.capitalized && !(original.lower == "i" && !original.sentence_start))
    return capitalize(replacement);
  return std::string(replacement);
}

Edit replace_word(const WordInfo& w, std::string rule, std::string_view new_core) {
  return Edit{w.offset, std::move(rule), std::string(w.raw), with_core(w, new_core)};
}

struct Rule {
  std::size_t cost = 1;
  std::function<std::vector<Site>(const std::vector<WordInfo>&)> sites;
  std::function<std::optional<Edit>(std::string_view, const std::vector<WordInfo>&, const Site&, SiteRng&)>
      realize;
};

std::vector<Site> every_word(const std::vector<WordInfo>& w) {
  std::vector<Site> s;
  for (std::size_t i = 0; i < w.size(); ++i) s.push_back({i, i});
  return s;
}

template <typename Pred>
std::vector<Site> words_where(const std::vector<WordInfo>& w, Pred pred) {
  std::vector<Site> s;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (pred(w, i)) s.push_back({i, i});
  return s;
}

bool governed_by_modal(const std::vector<WordInfo>& w, std::size_t i) {
  return i > 0 && joined(w, i - 1) && (w[i - 1].lower == "will" || w[i - 1].lower == "to");
}

std::string_view present_for(const std::vector<WordInfo>& w, std::size_t i, const lexicon::VerbEntry& e) {
  std::string subj = "he";
  if (i > 0 && joined(w, i - 1)) {
    std::size_t j = i - 1;
    if (w[j].tag == Tag::kAdv && j > 0 && joined(w, j - 1)) --j;
    if (w[j].tag == Tag::kSubjPron || w[j].tag == Tag::kPronAny) subj = w[j].lower;
  }
  const bool third = subj == "he" || subj == "she" || subj == "it";
  if (&e == &lexicon::be_entry()) return subj == "i" ? "am" : third ? "is" : "are";
  return third ? e.third : e.base;
}

// --- rules ---------------------------------------------------------------

Rule filler_rule() {
  Rule r;
  r.sites = every_word;
  r.realize = [](std::string_view, const std::vector<WordInfo>& w, const Site& s, SiteRng& rng)
      -> std::optional<Edit> {
    static constexpr std::string_view kLexicon[] = {"um", "uh", "like", "you know"};
    const std::string_view filler = kLexicon[rng.pick(4)];
    const auto& word = w[s.first];
    if (word.sentence_start && word.capitalized) {
      const std::string moved = word.lower == "i" ? std::string(word.raw) : decapitalize(word.raw);
      return Edit{word.offset, "filler_word.insert", std::string(word.raw),
                  capitalize(filler) + " " + moved};
    }
    return Edit{word.offset, "filler_word.insert", "", std::string(filler) + " "};
  };
  return r;
}

// Sites are the first two words of a clause; the two inserted words count
// as affected.
Rule redundant_rule() {
  Rule r;
  r.cost = 2;
  r.sites = [](const std::vector<WordInfo>& w) {
    std::vector<Site> s;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!w[i].clause_start || !all_alpha(w[i].core)) continue;
      if (joined(w, i) && all_alpha(w[i + 1].core)) s.push_back({i, i + 1});
    }
    return s;
  };
  r.realize = [](std::string_view, const std::vector<WordInfo>& w, const Site& s, SiteRng&)
      -> std::optional<Edit> {
    std::string copy;
    for (std::size_t k = s.first; k <= s.last; ++k) {
      if (!copy.empty()) copy += ' ';
      copy += w[k].lower == "i" ? std::string("I") : w[k].lower;
    }
    const auto& end = w[s.last];
    return Edit{end.offset + end.raw.size(), "redundant_phrase.duplicate", "", " " + copy};
  };
  return r;
}

Rule word_order_rule() {
  Rule r;
  r.cost = 2;
  r.sites = [](const std::vector<WordInfo>& w) {
    std::vector<Site> s;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!joined(w, i) || !all_alpha(w[i].core) || !all_alpha(w[i + 1].core)) continue;
      if (w[i].lower == w[i + 1].lower) continue;
      s.push_back({i, i + 1});
    }
    return s;
  };
  r.realize = [](std::string_view text, const std::vector<WordInfo>& w, const Site& s, SiteRng&)
      -> std::optional<Edit> {
    const auto& a = w[s.first];
    const auto& b = w[s.last];
    std::string a_core(a.core);
    std::string b_core(b.core);
    if (a.sentence_start && a.capitalized) {
      b_core = b.lower == "i" ? std::string("I") : capitalize(b_core);
      a_core = a.lower == "i" ? std::string("I") : decapitalize(a_core);
    }
    const std::size_t gap_begin = a.offset + a.raw.size();
    const std::string gap(text.substr(gap_begin, b.offset - gap_begin));
    const std::size_t end = b.offset + b.raw.size();
    return Edit{a.offset, "word_order.swap", std::string(text.substr(a.offset, end - a.offset)),
                with_core(a, b_core) + gap + with_core(b, a_core)};
  };
  return r;
}

Rule verb_form_rule() {
  Rule r;
  r.sites = [](const std::vector<WordInfo>& w) {
    return words_where(w, [](const auto& w, std::size_t i) {
      return is_finite_verb(w, i) || (w[i].verb && governed_by_modal(w, i));
    });
  };
  r.realize = [](std::string_view, const std::vector<WordInfo>& w, const Site& s, SiteRng& rng)
      -> std::optional<Edit> {
    const auto& word = w[s.first];
    const auto& e = *word.verb->entry;
    std::vector<std::string_view> options;
    if (governed_by_modal(w, s.first)) {
      options = {e.third, e.past, e.gerund};
    } else {
      options = {e.gerund};
      if (e.part != e.past && e.part != e.base) options.push_back(e.part);
      if (!e.bogus.empty()) options.push_back(e.bogus);
    }
    std::erase_if(options, [&](std::string_view o) { return o.empty() || o == word.lower; });
    if (options.empty()) return std::nullopt;
    return replace_word(word, "verb_form.substitute", match_case(options[rng.pick(options.size())], word));
  };
  return r;
}

// Sentences whose time expressions agree on one frame. A tense shift
// elsewhere ("They cooked." -> "They cook.") is still grammatical, so only
// anchored sentences offer tense sites.
std::vector<bool> time_anchored(const std::vector<WordInfo>& w) {
  std::vector<bool> anchored(w.size(), false);
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
    for (std::size_t i = begin; i < end; ++i) anchored[i] = frame != TimeFrame::kNone && !conflicting;
    begin = end;
  }
  return anchored;
}

Rule tense_rule() {
  Rule r;
  r.sites = [](const std::vector<WordInfo>& w) {
    std::vector<Site> s;
    const std::vector<bool> anchored = time_anchored(w);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!anchored[i]) continue;
      if (w[i].lower == "will" && joined(w, i) && w[i + 1].verb &&
          (w[i + 1].verb->forms & lexicon::kBase)) {
        s.push_back({i, i + 1});
      } else if (is_finite_verb(w, i)) {
        s.push_back({i, i});
      }
    }
    return s;
  };
  r.realize = [](std::string_view text, const std::vector<WordInfo>& w, const Site& s, SiteRng&)
      -> std::optional<Edit> {
    const auto& word = w[s.first];
    if (s.last != s.first) {  // "will go" -> "went"
      const auto& verb = w[s.last];
      const std::size_t end = verb.offset + verb.raw.size();
      const std::string past = match_case(verb.verb->entry->past, word);
      std::string after = std::string(leading_punct(word.raw)) + past +
                          std::string(verb.has_trailing ? trailing_punct(verb.raw) : std::string_view{});
      return Edit{word.offset, "tense.future_to_past",
                  std::string(text.substr(word.offset, end - word.offset)), std::move(after)};
    }
    const auto& e = *word.verb->entry;
    const unsigned f = word.verb->forms;
    std::string_view target;
    if (&e == &lexicon::be_entry()) {
      if (word.lower == "am" || word.lower == "is") target = "was";
      else if (word.lower == "are") target = "were";
      else if (word.lower == "was") target = present_for(w, s.first, e) == "am" ? "am" : "is";
      else if (word.lower == "were") target = "are";
    } else if (f & lexicon::kPast) {
      target = present_for(w, s.first, e);
    } else {
      target = e.past;
    }
    if (target.empty() || target == word.lower) return std::nullopt;
    return replace_word(word, "tense.shift", match_case(target, word));
  };
  return r;
}

Rule agreement_rule() {
  Rule r;
  r.sites = [](const std::vector<WordInfo>& w) {
    return words_where(w, [](const auto& w, std::size_t i) {
      if (!is_finite_verb(w, i)) return false;
      const unsigned f = w[i].verb->forms;
      if (w[i].verb->entry == &lexicon::be_entry()) return true;
      return (f & (lexicon::kBase | lexicon::kThird)) && !(f & lexicon::kPast);
    });
  };
  r.realize = [](std::string_view, const std::vector<WordInfo>& w, const Site& s, SiteRng&)
      -> std::optional<Edit> {
    const auto& word = w[s.first];
    const auto& e = *word.verb->entry;
    std::string_view target;
    if (&e == &lexicon::be_entry()) {
      if (word.lower == "is" || word.lower == "am") target = "are";
      else if (word.lower == "are") target = "is";
      else if (word.lower == "was") target = "were";
      else if (word.lower == "were") target = "was";
    } else {
      target = (word.verb->forms & lexicon::kThird) ? e.base : e.third;
    }
    if (target.empty()) return std::nullopt;
    return replace_word(word, "subject_verb_agreement.flip", match_case(target, word));
  };
  return r;
}

Rule spelling_rule() {
  Rule r;
  r.sites = [](const std::vector<WordInfo>& w) {
    return words_where(w, [](const auto& w, std::size_t i) {
      return all_alpha(w[i].core) && w[i].core.size() >= 3;
    });
  };
  r.realize = [](std::string_view, const std::vector<WordInfo>& w, const Site& s, SiteRng& rng)
      -> std::optional<Edit> {
    const auto& word = w[s.first];
    const std::string core(word.core);
    for (int attempt = 0; attempt < 12; ++attempt) {
      std::string out = core;
      const bool transpose = rng.uniform() < 0.5;
      std::string rule;
      if (transpose && core.size() >= 3) {
        // Swap two adjacent letters, never moving the first one.
        const std::size_t p = 1 + rng.pick(core.size() - 2);
        std::swap(out[p], out[p + 1]);
        rule = "spelling.transpose";
      } else {
        const std::size_t p = 1 + rng.pick(core.size() - 1);
        const char c = static_cast<char>('a' + rng.pick(26));
        out[p] = std::isupper(static_cast<unsigned char>(out[p]))
                     ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                     : c;
        rule = "spelling.substitute";
      }
      if (out != core && !lexicon::in_lexicon(to_lower(out))) return replace_word(word, rule, out);
    }
    return std::nullopt;
  };
  return r;
}

Rule punctuation_rule() {
  Rule r;
  r.sites = [](const std::vector<WordInfo>& w) {
    return words_where(w, [](const auto& w, std::size_t i) {
      const auto t = trailing_punct(w[i].raw);
      return !w[i].core.empty() && t.find_first_of(".,!?;:") != std::string_view::npos;
    });
  };
  r.realize = [](std::string_view, const std::vector<WordInfo>& w, const Site& s, SiteRng& rng)
      -> std::optional<Edit> {
    const auto& word = w[s.first];
    const auto trail = trailing_punct(word.raw);
    const std::size_t mark = trail.find_first_of(".,!?;:");
    const char c = trail[mark];
    const double u = rng.uniform();
    std::string replacement;
    std::string rule;
    if (c == ',' || c == ';' || c == ':') {
      if (u < 0.6) {
        rule = "punctuation.delete";
      } else {
        replacement = ".";
        rule = "punctuation.swap";
      }
    } else if (u < 0.5) {
      rule = "punctuation.delete";
    } else if (u < 0.8) {
      replacement = ",";
      rule = "punctuation.swap";
    } else {
      replacement = c == '?' ? "." : "?";
      rule = "punctuation.swap";
    }
    std::string new_trail(trail);
    new_trail.replace(mark, 1, replacement);
    std::string after = std::string(leading_punct(word.raw)) + std::string(word.core) + new_trail;
    return Edit{word.offset, std::move(rule), std::string(word.raw), std::move(after)};
  };
  return r;
}

Rule pronoun_rule() {
  Rule r;
  r.sites = [](const std::vector<WordInfo>& w) {
    return words_where(w, [](const auto& w, std::size_t i) {
      return !lexicon::pronoun_partner(w[i].lower).empty();
    });
  };
  r.realize = [](std::string_view, const std::vector<WordInfo>& w, const Site& s, SiteRng&)
      -> std::optional<Edit> {
    const auto& word = w[s.first];
    return replace_word(word, "pronoun.substitute",
                        match_case(lexicon::pronoun_partner(word.lower), word));
  };
  return r;
}

Rule preposition_rule() {
  Rule r;
  r.sites = [](const std::vector<WordInfo>& w) {
    return words_where(w, [](const auto& w, std::size_t i) { return w[i].tag == Tag::kPrep; });
  };
  r.realize = [](std::string_view text, const std::vector<WordInfo>& w, const Site& s, SiteRng& rng)
      -> std::optional<Edit> {
    const auto& word = w[s.first];
    const bool can_delete = !word.has_trailing && !word.sentence_start && s.first + 1 < w.size();
    if (can_delete && rng.uniform() < 0.25) {
      const std::size_t end = w[s.first + 1].offset;
      return Edit{word.offset, "preposition.delete",
                  std::string(text.substr(word.offset, end - word.offset)), ""};
    }
    const auto preps = lexicon::prepositions();
    std::string_view choice = word.lower;
    while (choice == word.lower) choice = preps[rng.pick(preps.size())];
    return replace_word(word, "preposition.substitute", match_case(choice, word));
  };
  return r;
}

const Rule& rule_for(ErrorType type) {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> v(kErrorTypeCount);
    v[index_of(ErrorType::kFillerWord)] = filler_rule();
    v[index_of(ErrorType::kRedundantPhrase)] = redundant_rule();
    v[index_of(ErrorType::kWordOrder)] = word_order_rule();
    v[index_of(ErrorType::kVerbForm)] = verb_form_rule();
    v[index_of(ErrorType::kPreposition)] = preposition_rule();
    v[index_of(ErrorType::kTense)] = tense_rule();
    v[index_of(ErrorType::kSubjectVerbAgreement)] = agreement_rule();
    v[index_of(ErrorType::kSpelling)] = spelling_rule();
    v[index_of(ErrorType::kPunctuation)] = punctuation_rule();
    v[index_of(ErrorType::kPronoun)] = pronoun_rule();
    return v;
  }();
  return rules[index_of(type)];
}

}  // namespace

std::string apply_edits(std::string_view original, const std::vector<Edit>& edits) {
  std::string out;
  out.reserve(original.size() + 16 * edits.size());
  std::size_t cursor = 0;
  for (const auto& e : edits) {
    if (e.position < cursor || e.position + e.before.size() > original.size() ||
        original.substr(e.position, e.before.size()) != e.before)
      throw ValidationError("edit at byte " + std::to_string(e.position) + " does not match the text");
    out.append(original.substr(cursor, e.position - cursor));
    out += e.after;
    cursor = e.position + e.before.size();
  }
  out.append(original.substr(cursor));
  return out;
}

CorruptionResult inject(std::string_view text, const ErrorSpec& spec) {
  if (!(spec.intensity >= 0.0 && spec.intensity <= 1.0))
    throw ValidationError("error intensity must lie in [0, 1]");
  const auto words = analyze_words(text);
  if (words.empty()) throw ValidationError("cannot inject errors into text without words");

  CorruptionResult res;
  res.original = std::string(text);
  res.word_count = words.size();
  res.target_words = static_cast<std::size_t>(std::llround(spec.intensity * static_cast<double>(words.size())));

  const Rule& rule = rule_for(spec.type);
  std::vector<Site> sites = rule.sites(words);
  res.eligible_sites = sites.size();
  if (res.target_words == 0) {
    res.corrupted = res.original;
    return res;
  }

  const std::uint64_t order_seed = derive_seed(spec.seed, {static_cast<std::uint64_t>(spec.type), 0x5173});
  std::mt19937_64 order_rng(order_seed);
  std::shuffle(sites.begin(), sites.end(), order_rng);

  std::vector<bool> used(words.size(), false);
  for (const Site& site : sites) {
    if (res.affected_words + rule.cost > res.target_words) break;
    bool free = true;
    for (std::size_t k = site.first; k <= site.last; ++k) free = free && !used[k];
    if (!free) continue;
    SiteRng rng(derive_seed(spec.seed, {static_cast<std::uint64_t>(spec.type), site.first, 0xED17}));
    auto edit = rule.realize(text, words, site, rng);
    if (!edit) continue;
    for (std::size_t k = site.first; k <= site.last; ++k) used[k] = true;
    res.edits.push_back(std::move(*edit));
    res.affected_words += rule.cost;
    if (res.affected_words == res.target_words) break;
  }
  std::sort(res.edits.begin(), res.edits.end(),
            [](const Edit& a, const Edit& b) { return a.position < b.position; });
  res.corrupted = apply_edits(text, res.edits);
  res.achieved_intensity = static_cast<double>(res.affected_words) / static_cast<double>(res.word_count);
  res.shortfall = res.target_words - res.affected_words >= rule.cost;
  return res;
}

}  // namespace gramscore
