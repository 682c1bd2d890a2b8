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

#ifndef GRAMSCORE_PSEUDO_LABEL_PROMPT_HPP
#define GRAMSCORE_PSEUDO_LABEL_PROMPT_HPP

#include <optional>
#include <string>
#include <string_view>

namespace gramscore {

inline constexpr std::string_view kResponseOpen = "[[RESPONSE]]";
inline constexpr std::string_view kResponseClose = "[[END RESPONSE]]";
inline constexpr std::string_view kResponsePlaceholder = "{response}";
inline constexpr std::string_view kScoreInstruction =
    "Reply with a single numeric grammar score from 1 to 5 (an integer), followed by nothing else.";

// Rubric text plus a template holding the {response} placeholder. The hash
// covers rubric, template, and the fixed score instruction, so editing any of
// them invalidates cached labels.
class RubricPrompt {
 public:
  // Throws ConfigError when the template lacks the placeholder or the rubric
  // is blank.
  RubricPrompt(std::string rubric_text, std::string template_text);

  static RubricPrompt default_prompt();
  static RubricPrompt from_file(const std::string& rubric_path);

  const std::string& rubric_text() const noexcept { return rubric_; }
  const std::string& template_text() const noexcept { return template_; }
  const std::string& prompt_hash() const noexcept { return hash_; }

 private:
  std::string rubric_;
  std::string template_;
  std::string hash_;
};

// The shipped five-point grammar rubric (also in assets/rubric.txt).
std::string_view default_rubric_text();
std::string_view default_template_text();

// Response text inside the markers: "[" followed by "[" or "\" becomes "[\".
std::string escape_response(std::string_view text);
std::string unescape_response(std::string_view text);

std::string build_prompt(const RubricPrompt& rubric, std::string_view sample_text);

// Recovers the verbatim sample text from a rendered prompt.
std::optional<std::string> extract_response(std::string_view prompt);

// First numeric token of an LLM reply. Throws ParseError when there is none
// and OutOfRangeError when it falls outside [1, 5].
double parse_score(std::string_view raw_response);

}  // namespace gramscore

#endif  // GRAMSCORE_PSEUDO_LABEL_PROMPT_HPP
