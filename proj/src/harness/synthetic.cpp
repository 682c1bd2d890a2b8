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

#include "harness/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"
#include "text/lexicon.hpp"
#include "text/markers.hpp"

namespace gramscore {

namespace {

using lexicon::VerbEntry;

enum class Frame { kPast, kPresent, kFuture, kNeutral };

struct Subject {
  std::string text;
  enum Kind { kFirst, kThird, kPlural } kind;
};

constexpr std::array<std::string_view, 5> kPossessives = {"my", "his", "her", "our", "their"};
constexpr std::array<std::string_view, 15> kBareObjects = {
    "music",   "dinner", "lunch", "breakfast", "soup",  "history", "math",  "science",
    "art",     "football", "chess", "homework", "bread", "guitar", "piano"};

template <typename T>
const T& pick(std::mt19937_64& g, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(g)];
}

template <typename T, std::size_t N>
const T& pick(std::mt19937_64& g, const std::array<T, N>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, N - 1)(g)];
}

template <typename T>
const T& pick(std::mt19937_64& g, std::span<const T> v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(g)];
}

bool chance(std::mt19937_64& g, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(g) < p; }

std::vector<std::string_view> split_words(std::string_view list) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < list.size()) {
    auto j = list.find(' ', i);
    if (j == std::string_view::npos) j = list.size();
    out.push_back(list.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

bool is_bare(std::string_view noun) {
  return std::find(kBareObjects.begin(), kBareObjects.end(), noun) != kBareObjects.end();
}

std::string noun_phrase(std::mt19937_64& g, std::string_view noun) {
  if (lexicon::is_person_noun(noun)) return std::string(pick(g, kPossessives)) + " " + std::string(noun);
  if (is_bare(noun) && chance(g, 0.7)) return std::string(noun);
  std::string det = "the";
  if (chance(g, 0.25)) det = pick(g, kPossessives);
  if (chance(g, 0.2)) det += " " + std::string(pick(g, lexicon::adjectives()));
  return det + " " + std::string(noun);
}

Subject make_subject(std::mt19937_64& g) {
  static const std::vector<Subject> kPronouns = {
      {"I", Subject::kFirst}, {"he", Subject::kThird}, {"she", Subject::kThird},
      {"we", Subject::kPlural}, {"they", Subject::kPlural}};
  if (chance(g, 0.65)) return pick(g, kPronouns);
  const std::string det = chance(g, 0.8) ? std::string(pick(g, kPossessives)) : "the";
  return {det + " " + std::string(pick(g, lexicon::person_nouns())), Subject::kThird};
}

std::string verb_phrase(std::mt19937_64& g, const VerbEntry& v, const Subject& s, Frame f) {
  switch (f) {
    case Frame::kPast:
      return std::string(v.past);
    case Frame::kFuture:
      return "will " + std::string(v.base);
    default:
      return std::string(s.kind == Subject::kThird ? v.third : v.base);
  }
  (void)g;
}

std::string be_phrase(const Subject& s, Frame f) {
  switch (f) {
    case Frame::kPast:
      return s.kind == Subject::kPlural ? "were" : "was";
    case Frame::kFuture:
      return "will be";
    default:
      return s.kind == Subject::kFirst ? "am" : s.kind == Subject::kThird ? "is" : "are";
  }
}

std::string object_phrase(std::mt19937_64& g, const VerbEntry& v) {
  static const std::vector<std::string> kObjectPronouns = {"him", "her", "them", "us", "me"};
  if (v.takes_person && chance(g, 0.3)) return pick(g, kObjectPronouns);
  const auto nouns = split_words(v.objects);
  std::string np = noun_phrase(g, pick(g, nouns));
  if (!v.prep.empty()) return std::string(v.prep) + " " + np;
  return np;
}

std::string clause(std::mt19937_64& g, const Subject& s, Frame f) {
  if (chance(g, 0.15)) return s.text + " " + be_phrase(s, f) + " " + std::string(pick(g, lexicon::predicate_adjectives()));
  const auto verbs = lexicon::verbs();
  const VerbEntry& v = verbs[std::uniform_int_distribution<std::size_t>(0, verbs.size() - 1)(g)];
  return s.text + " " + verb_phrase(g, v, s, f) + " " + object_phrase(g, v);
}

std::string time_phrase(std::mt19937_64& g) {
  static const std::vector<std::string> kTimes = {"in the morning", "in the evening", "in the afternoon", "at night"};
  if (chance(g, 0.7)) return pick(g, kTimes);
  static constexpr std::array<std::string_view, 7> kDays = {"monday", "tuesday", "wednesday", "thursday",
                                                           "friday", "saturday", "sunday"};
  return "on " + capitalize(pick(g, kDays));
}

std::string companion(std::mt19937_64& g) {
  return "with " + std::string(pick(g, kPossessives)) + " " + std::string(pick(g, lexicon::person_nouns()));
}

// A second "with" phrase reads as a repeated phrase, so a clause that
// already has one only gets a time phrase.
std::string extra_phrase(std::mt19937_64& g, const std::string& so_far) {
  const bool has_with = so_far.find(" with ") != std::string::npos;
  if (!has_with && chance(g, 0.4)) return companion(g);
  return time_phrase(g);
}

}  // namespace

namespace {

constexpr std::array<std::string_view, 5> kTerseOpen = {"Yesterday", "Usually", "Often", "Sometimes", "Tomorrow"};

Frame frame_of_opening(std::string_view open) {
  if (open == "Yesterday") return Frame::kPast;
  if (open == "Tomorrow") return Frame::kFuture;
  return Frame::kPresent;
}

// "She cooks dinner." / "Yesterday, I cleaned, and they played chess."
std::string terse_clause(std::mt19937_64& g, Frame f) {
  static const std::vector<std::string_view> kVerbs = {"cook", "eat", "write", "make", "buy", "watch",
                                                       "play", "study", "help", "finish", "clean", "visit"};
  const auto* v = lexicon::lookup_verb(pick(g, kVerbs))->entry;
  const Subject s = make_subject(g);
  std::string out = s.text + " " + verb_phrase(g, *v, s, f);
  if (chance(g, 0.5)) {
    const auto nouns = split_words(v->objects);
    const auto noun = pick(g, nouns);
    out += " " + (is_bare(noun) ? std::string(noun) : noun_phrase(g, noun));
  }
  return out;
}

std::string terse_sentence(std::mt19937_64& g) {
  std::string s;
  Frame f = chance(g, 0.5) ? Frame::kPast : Frame::kPresent;
  if (chance(g, 0.85)) {
    const auto open = pick(g, kTerseOpen);
    f = frame_of_opening(open);
    s = std::string(open) + ", ";
  }
  s += terse_clause(g, f);
  if (chance(g, 0.4)) s += ", and " + terse_clause(g, f);
  return capitalize(s + ".");
}

// "My sister waits for the bus with her friend in the morning."
std::string detailed_sentence(std::mt19937_64& g) {
  static const std::vector<std::string_view> kPrepVerbs = {"go", "walk", "drive", "arrive",
                                                           "listen", "talk", "wait", "look"};
  const auto* v = lexicon::lookup_verb(pick(g, kPrepVerbs))->entry;
  static const std::vector<std::string> kPastOpen = {"Yesterday", "Last week", "Two days ago"};
  static const std::vector<std::string> kPresentOpen = {"Usually", "Often", "Every day"};
  const Frame f = chance(g, 0.5) ? Frame::kPast : Frame::kPresent;
  const Subject s = make_subject(g);
  std::string out;
  if (chance(g, 0.7)) out = pick(g, f == Frame::kPast ? kPastOpen : kPresentOpen) + ", ";
  out += s.text + " " + verb_phrase(g, *v, s, f) + " " + object_phrase(g, *v);
  if (out.find(" with ") == std::string::npos && chance(g, 0.7)) out += " " + companion(g);
  out += " " + time_phrase(g);
  return capitalize(out + ".");
}

}  // namespace

std::string TemplateWriter::sentence(Style style) {
  auto& g = gen_;
  if (style == Style::kTerse) return terse_sentence(g);
  if (style == Style::kDetailed) return detailed_sentence(g);
  const Frame frame = static_cast<Frame>(std::discrete_distribution<int>({30, 40, 15, 15})(g));
  static const std::vector<std::string> kPastOpen = {"Yesterday", "Last week", "Last night", "Two days ago",
                                                     "Three days ago", "Last year"};
  static const std::vector<std::string> kPastClose = {"yesterday", "last week", "two days ago", "last year"};
  static const std::vector<std::string> kPresentOpen = {"Usually", "Often", "Sometimes", "Every morning",
                                                        "Every weekend", "Every day"};
  static const std::vector<std::string> kPresentClose = {"every day", "every week", "every weekend"};
  static const std::vector<std::string> kFutureOpen = {"Tomorrow", "Next week", "Next year"};
  static const std::vector<std::string> kFutureClose = {"tomorrow", "next week", "next year"};

  std::string open, close;
  bool opening_is_time = false;
  const bool use_open = chance(g, 0.5);
  switch (frame) {
    case Frame::kPast:
      (use_open ? open : close) = pick(g, use_open ? kPastOpen : kPastClose);
      break;
    case Frame::kPresent:
      (use_open ? open : close) = pick(g, use_open ? kPresentOpen : kPresentClose);
      break;
    case Frame::kFuture:
      (use_open ? open : close) = pick(g, use_open ? kFutureOpen : kFutureClose);
      break;
    case Frame::kNeutral:
      break;
  }
  opening_is_time = !open.empty() && (open.find("morning") != std::string::npos || open == "Last night");
  const Frame verb_frame = frame == Frame::kNeutral ? (chance(g, 0.4) ? Frame::kPast : Frame::kPresent) : frame;

  std::string s;
  if (!open.empty()) s = open + ", ";
  s += clause(g, make_subject(g), verb_frame);
  // Neutral sentences stay short: subject, verb, object.
  if (frame != Frame::kNeutral) {
    if (!opening_is_time && close.empty() && chance(g, 0.5))
      s += " " + extra_phrase(g, s);
    else if (s.find(" with ") == std::string::npos && chance(g, 0.2))
      s += " " + companion(g);
  }
  if (!close.empty()) s += " " + close;
  if (chance(g, 0.3)) {
    s += ", " + std::string(chance(g, 0.7) ? "and" : "but") + " ";
    s += clause(g, make_subject(g), verb_frame);
  }
  s += ".";
  return capitalize(s);
}

std::string TemplateWriter::paragraph(std::size_t sentences) {
  const auto style = static_cast<Style>(std::discrete_distribution<int>({50, 25, 25})(gen_));
  std::string out;
  for (std::size_t i = 0; i < sentences; ++i) {
    if (i) out += ' ';
    out += sentence(style);
  }
  return out;
}

namespace {

SyntheticItem make_item(const SyntheticOptions& o, std::uint64_t stream, std::size_t index, const std::string& prefix) {
  const std::uint64_t item_seed = derive_seed(o.seed, {stream, index});
  std::mt19937_64 g(item_seed);
  TemplateWriter writer(derive_seed(item_seed, {1}));
  const std::size_t n_sent = std::uniform_int_distribution<std::size_t>(o.min_sentences, o.max_sentences)(g);
  std::string text = writer.paragraph(n_sent);

  SyntheticItem item;
  item.original_words = word_count(text);
  if (!chance(g, o.clean_fraction)) {
    std::vector<ErrorType> types(kAllErrorTypes.begin(), kAllErrorTypes.end());
    std::shuffle(types.begin(), types.end(), g);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, o.max_error_types))(g);
    for (std::size_t t = 0; t < k; ++t) {
      ErrorSpec spec{types[t], std::uniform_real_distribution<double>(o.min_intensity, o.max_intensity)(g),
                     derive_seed(item_seed, {2, t})};
      const CorruptionResult r = inject(text, spec);
      text = r.corrupted;
      item.affected_words += r.affected_words;
      item.specs.push_back(spec);
    }
  }
  item.injected_density = static_cast<double>(item.affected_words) / static_cast<double>(item.original_words);
  item.true_score = rubric_score_from_density(item.injected_density);

  char id[32];
  std::snprintf(id, sizeof id, "%s%05zu", prefix.c_str(), index);
  char cand[32];
  std::snprintf(cand, sizeof cand, "%sc%04zu", prefix.c_str(), index / std::max<std::size_t>(1, o.responses_per_candidate));
  item.sample = Sample{id, cand, text, index % 2 == 0 ? Modality::kWritten : Modality::kSpoken};
  return item;
}

}  // namespace

SyntheticCorpus generate_corpus(const SyntheticOptions& o) {
  if (o.min_sentences == 0 || o.min_sentences > o.max_sentences)
    throw ConfigError("synthetic sentence range is invalid");
  if (!(o.min_intensity >= 0.0 && o.min_intensity <= o.max_intensity && o.max_intensity <= 1.0))
    throw ConfigError("synthetic intensity range is invalid");
  if (!(o.clean_fraction >= 0.0 && o.clean_fraction <= 1.0)) throw ConfigError("clean_fraction must lie in [0, 1]");
  SyntheticCorpus c;
  std::vector<Record> train, test;
  for (std::size_t i = 0; i < o.train_size; ++i) {
    c.train_items.push_back(make_item(o, 0x7A, i, "tr"));
    train.emplace_back(c.train_items.back().sample);
  }
  for (std::size_t i = 0; i < o.test_size; ++i) {
    c.test_items.push_back(make_item(o, 0x7E, i, "te"));
    test.emplace_back(c.test_items.back().sample, std::vector<double>{c.test_items.back().true_score});
  }
  c.train = Dataset(std::move(train), SplitTag::kTrain);
  c.test = Dataset(std::move(test), SplitTag::kTest);
  return c;
}

NoisyLabels attach_noisy_labels(const Dataset& dataset, const std::vector<double>& labels, double rate,
                                std::uint64_t seed, const std::string& model_name) {
  if (labels.size() != dataset.size()) throw ValidationError("label count does not match dataset size");
  if (!(rate >= 0.0 && rate <= 1.0)) throw ValidationError("noise rate must lie in [0, 1]");
  const std::size_t n = dataset.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 g(derive_seed(seed, {0x401}));
  std::shuffle(order.begin(), order.end(), g);
  const auto k = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
  NoisyLabels out;
  out.corrupted.assign(n, false);
  std::vector<double> y = labels;
  std::uniform_real_distribution<double> u(kMinScore, kMaxScore);
  for (std::size_t j = 0; j < k; ++j) {
    out.corrupted[order[j]] = true;
    y[order[j]] = u(g);
  }
  std::vector<Record> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    records.push_back(dataset[i].with_pseudo_label(std::clamp(y[i], kMinScore, kMaxScore),
                                                   Provenance{model_name, "synthetic"}));
  out.dataset = Dataset(std::move(records), dataset.split());
  return out;
}

}  // namespace gramscore
