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

#ifndef GRAMSCORE_CORE_STRINGS_HPP
#define GRAMSCORE_CORE_STRINGS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gramscore {

// A whitespace-delimited word with its byte span in the source text.
struct Token {
  std::size_t offset = 0;
  std::string_view text;
};

// Splits on ASCII whitespace; punctuation stays attached to its word.
std::vector<Token> tokenize_words(std::string_view text);
std::size_t word_count(std::string_view text);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

// Letters/digits/apostrophes of a token without leading or trailing
// punctuation ("park." -> "park", "\"Hello," -> "Hello").
std::string_view token_core(std::string_view token);
std::string_view leading_punct(std::string_view token);
std::string_view trailing_punct(std::string_view token);

bool is_capitalized(std::string_view word);
std::string capitalize(std::string_view word);
std::string decapitalize(std::string_view word);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Shortest decimal that parses back to the same double, with at least six
// digits after the decimal point.
std::string format_score(double value);
// Fixed-point formatting for tables.
std::string format_fixed(double value, int digits = 6);

std::string csv_escape(std::string_view field);
std::vector<std::string> split_csv_line(std::string_view line);

std::string hex64(std::uint64_t value);

}  // namespace gramscore

#endif  // GRAMSCORE_CORE_STRINGS_HPP
