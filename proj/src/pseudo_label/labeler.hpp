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

#ifndef GRAMSCORE_PSEUDO_LABEL_LABELER_HPP
#define GRAMSCORE_PSEUDO_LABEL_LABELER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "dataset/dataset.hpp"
#include "pseudo_label/cache.hpp"
#include "pseudo_label/client.hpp"
#include "pseudo_label/prompt.hpp"

namespace gramscore {

struct LabelingOptions {
  std::size_t retries = 3;      // maximum attempts per sample
  std::size_t concurrency = 1;  // simultaneous client calls
};

struct Rejection {
  std::string sample_id;
  std::string reason;
  std::size_t attempts = 0;
};

struct LabelingResult {
  // Same records and order as the input; rejected samples stay unlabeled.
  Dataset dataset;
  std::vector<Rejection> rejections;  // in dataset order
  std::size_t client_calls = 0;
  std::size_t cache_hits = 0;

  double rejection_rate() const;
};

// Labels every sample through the cache and client. Cache write failures
// propagate as IoError; every other per-sample failure becomes a rejection.
LabelingResult pseudo_label_dataset(const Dataset& dataset, LLMClient& client, const RubricPrompt& rubric,
                                    const LabelingOptions& options, PseudoLabelCache& cache);

// Columns: sample_id, reason, attempts.
std::string rejection_csv(const std::vector<Rejection>& rejections);

}  // namespace gramscore

#endif  // GRAMSCORE_PSEUDO_LABEL_LABELER_HPP
