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

#include "pseudo_label/prompt.hpp"

#include <cctype>
#include <cstdlib>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"
#include "dataset/dataset.hpp"

namespace gramscore {

namespace {

constexpr std::string_view kDefaultRubric =
    R"(Grammar competency rubric (five points). Judge grammar only: accuracy of
word forms and agreement, sentence structure, word order, function words,
punctuation, and fluency of expression. Ignore content, ideas, and
pronunciation.

5 - Excellent. Grammar is accurate throughout. Verb forms, tense, agreement,
    prepositions, and pronouns are correct. Sentences are well formed and
    fluent; punctuation is correct. No fillers or needless repetition.
4 - Good. Occasional minor errors (for example a single agreement slip or a
    missing comma) that do not affect meaning. Mostly fluent.
3 - Adequate. Several noticeable errors in verb forms, tense, agreement,
    prepositions, or word order. Meaning stays clear but fluency suffers;
    some fillers or repetition.
2 - Limited. Frequent errors across categories. Some sentences are hard to
    follow because of word order or form errors; frequent fillers or
    repeated phrases.
1 - Very limited. Errors in most sentences. Grammar control is minimal and
    meaning is often obscured.
)";

constexpr std::string_view kDefaultTemplate =
    "Score the grammar of the following response against the rubric. The response is "
    "enclosed between the markers below; everything between them is the response.\n\n{response}\n\nScore:";

}  // namespace

std::string_view default_rubric_text() { return kDefaultRubric; }
std::string_view default_template_text() { return kDefaultTemplate; }

RubricPrompt::RubricPrompt(std::string rubric_text, std::string template_text)
    : rubric_(std::move(rubric_text)), template_(std::move(template_text)) {
  if (trim(rubric_).empty()) throw ConfigError("rubric text is empty");
  if (template_.find(kResponsePlaceholder) == std::string::npos)
    throw ConfigError("prompt template lacks the {response} placeholder");
  std::string material = rubric_;
  material.push_back('\0');
  material += template_;
  material.push_back('\0');
  material += kScoreInstruction;
  hash_ = hex64(fnv1a64(material));
}

RubricPrompt RubricPrompt::default_prompt() {
  return RubricPrompt(std::string(kDefaultRubric), std::string(kDefaultTemplate));
}

RubricPrompt RubricPrompt::from_file(const std::string& rubric_path) {
  return RubricPrompt(read_file(rubric_path), std::string(kDefaultTemplate));
}

std::string escape_response(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    out.push_back(text[i]);
    if (text[i] == '[' && i + 1 < text.size() && (text[i + 1] == '[' || text[i + 1] == '\\')) out.push_back('\\');
  }
  return out;
}

std::string unescape_response(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    out.push_back(text[i]);
    if (text[i] == '[' && i + 1 < text.size() && text[i + 1] == '\\') ++i;
  }
  return out;
}

std::string build_prompt(const RubricPrompt& rubric, std::string_view sample_text) {
  std::string block;
  block += kResponseOpen;
  block += '\n';
  block += escape_response(sample_text);
  block += '\n';
  block += kResponseClose;

  std::string body = rubric.template_text();
  const auto at = body.find(kResponsePlaceholder);
  body.replace(at, kResponsePlaceholder.size(), block);

  std::string prompt = rubric.rubric_text();
  if (!prompt.empty() && prompt.back() != '\n') prompt.push_back('\n');
  prompt += '\n';
  prompt += kScoreInstruction;
  prompt += "\n\n";
  prompt += body;
  return prompt;
}

std::optional<std::string> extract_response(std::string_view prompt) {
  std::string open(kResponseOpen);
  open.push_back('\n');
  const auto start = prompt.find(open);
  if (start == std::string_view::npos) return std::nullopt;
  std::string close = "\n";
  close += kResponseClose;
  const auto body = start + open.size();
  const auto stop = prompt.find(close, body);
  if (stop == std::string_view::npos) return std::nullopt;
  return unescape_response(prompt.substr(body, stop - body));
}

double parse_score(std::string_view raw) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto c = static_cast<unsigned char>(raw[i]);
    const bool sign = (c == '-' || c == '+') && i + 1 < raw.size() &&
                      std::isdigit(static_cast<unsigned char>(raw[i + 1]));
    if (!std::isdigit(c) && !sign) continue;
    // Digits glued to letters ("gpt4") are not scores.
    if (i > 0 && std::isalpha(static_cast<unsigned char>(raw[i - 1]))) {
      while (i + 1 < raw.size() && std::isalnum(static_cast<unsigned char>(raw[i + 1]))) ++i;
      continue;
    }
    std::size_t j = i + (sign ? 1 : 0);
    while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
    if (j + 1 < raw.size() && raw[j] == '.' && std::isdigit(static_cast<unsigned char>(raw[j + 1]))) {
      ++j;
      while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
    }
    const std::string token(raw.substr(i, j - i));
    const double v = std::strtod(token.c_str(), nullptr);
    if (v < kMinScore || v > kMaxScore) throw OutOfRangeError("score " + token + " is outside [1, 5]");
    return v;
  }
  throw ParseError("no numeric score in response");
}

}  // namespace gramscore
