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

#ifndef GRAMSCORE_ERROR_INJECTION_ERROR_TYPE_HPP
#define GRAMSCORE_ERROR_INJECTION_ERROR_TYPE_HPP

#include <array>
#include <cstddef>
#include <string_view>

namespace gramscore {

enum class ErrorType : int {
  kFillerWord = 0,
  kRedundantPhrase,
  kWordOrder,
  kVerbForm,
  kPreposition,
  kTense,
  kSubjectVerbAgreement,
  kSpelling,
  kPunctuation,
  kPronoun,
};

inline constexpr std::size_t kErrorTypeCount = 10;

inline constexpr std::array<ErrorType, kErrorTypeCount> kAllErrorTypes = {
    ErrorType::kFillerWord,  ErrorType::kRedundantPhrase,      ErrorType::kWordOrder,
    ErrorType::kVerbForm,    ErrorType::kPreposition,          ErrorType::kTense,
    ErrorType::kSubjectVerbAgreement, ErrorType::kSpelling,    ErrorType::kPunctuation,
    ErrorType::kPronoun,
};

// snake_case names used in files and on the command line.
std::string_view to_string(ErrorType type);
ErrorType parse_error_type(std::string_view name);

inline std::size_t index_of(ErrorType type) { return static_cast<std::size_t>(type); }

}  // namespace gramscore

#endif  // GRAMSCORE_ERROR_INJECTION_ERROR_TYPE_HPP
