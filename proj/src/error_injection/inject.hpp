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

#ifndef GRAMSCORE_ERROR_INJECTION_INJECT_HPP
#define GRAMSCORE_ERROR_INJECTION_INJECT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error_injection/error_type.hpp"

namespace gramscore {

struct ErrorSpec {
  ErrorType type = ErrorType::kFillerWord;
  double intensity = 0.0;  // fraction of words affected, in [0, 1]
  std::uint64_t seed = 0;
};

// Byte-level edit against the ORIGINAL text: replace `before` (which starts
// at `position`) with `after`. Edits in a result are sorted and disjoint.
struct Edit {
  std::size_t position = 0;
  std::string rule_id;
  std::string before;
  std::string after;

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct CorruptionResult {
  std::string original;
  std::string corrupted;
  std::vector<Edit> edits;
  double achieved_intensity = 0.0;
  std::size_t word_count = 0;      // of the original
  std::size_t target_words = 0;    // round(intensity * word_count)
  std::size_t affected_words = 0;
  std::size_t eligible_sites = 0;
  // Fewer words affected than requested because the rule ran out of sites.
  bool shortfall = false;

  friend bool operator==(const CorruptionResult&, const CorruptionResult&) = default;
};

// Applies one error rule at the requested intensity. Sites are sampled
// without replacement from a permutation fixed by (seed, type), and each
// site's realisation depends only on (seed, type, site), so the edits at a
// lower intensity are a subset of the edits at a higher one.
CorruptionResult inject(std::string_view text, const ErrorSpec& spec);

// Replays an edit log. Throws ValidationError if an edit does not match the
// text or edits overlap.
std::string apply_edits(std::string_view original, const std::vector<Edit>& edits);

}  // namespace gramscore

#endif  // GRAMSCORE_ERROR_INJECTION_INJECT_HPP
