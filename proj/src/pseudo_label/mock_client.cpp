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

#include <cstdio>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "pseudo_label/client.hpp"
#include "pseudo_label/prompt.hpp"
#include "text/markers.hpp"

namespace gramscore {

MockClient::MockClient(std::uint64_t noise_seed, double corruption_rate, std::string model_name)
    : noise_seed_(noise_seed), corruption_rate_(corruption_rate), model_name_(std::move(model_name)) {
  if (!(corruption_rate >= 0.0 && corruption_rate <= 1.0))
    throw ConfigError("mock corruption_rate must lie in [0, 1]");
}

double MockClient::rule_score(std::string_view text) {
  return rubric_score_from_density(count_markers(text).total_density());
}

bool MockClient::is_corrupted(const std::string& prompt) const {
  if (corruption_rate_ <= 0.0) return false;
  const std::uint64_t h = derive_seed(noise_seed_, {fnv1a64(prompt), 0xC0});
  return unit_interval(h) < corruption_rate_;
}

std::string MockClient::complete(const std::string& prompt) {
  ++calls_;
  double score;
  if (is_corrupted(prompt)) {
    score = static_cast<double>(1 + derive_seed(noise_seed_, {fnv1a64(prompt), 0x5C}) % 5);
  } else {
    const auto text = extract_response(prompt);
    score = rule_score(text ? std::string_view(*text) : std::string_view(prompt));
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "Score: %.4f", score);
  return buf;
}

}  // namespace gramscore
