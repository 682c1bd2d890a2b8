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

#include "pseudo_label/labeler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "core/error.hpp"
#include "core/strings.hpp"

namespace gramscore {

namespace {

struct Outcome {
  std::optional<double> score;
  std::optional<Rejection> rejection;
  bool from_cache = false;
  std::size_t calls = 0;
};

Outcome label_one(const Record& record, LLMClient& client, const RubricPrompt& rubric, const std::string& model,
                  const LabelingOptions& options, PseudoLabelCache& cache) {
  Outcome out;
  const CacheKey key{record.sample().id, rubric.prompt_hash(), model};
  if (auto hit = cache.lookup(key)) {
    out.from_cache = true;
    if (hit->score)
      out.score = hit->score;
    else
      out.rejection = Rejection{key.sample_id, hit->reason, hit->attempts};
    return out;
  }

  const std::string prompt = build_prompt(rubric, record.sample().text);
  std::string reason = "no attempts made";
  std::string raw;
  bool deterministic_failure = false;
  const std::size_t max_attempts = std::max<std::size_t>(1, options.retries);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    try {
      ++out.calls;
      raw = client.complete(prompt);
      const double score = parse_score(raw);
      cache.put(key, CacheEntry{raw, score, "", attempt});
      out.score = score;
      return out;
    } catch (const ParseError& e) {
      reason = std::string("parse failure: ") + e.what();
      deterministic_failure = true;
    } catch (const OutOfRangeError& e) {
      reason = std::string("out of range: ") + e.what();
      deterministic_failure = true;
    } catch (const TransportError& e) {
      reason = std::string("transport failure: ") + e.what();
      deterministic_failure = false;
    }
  }
  // Bad replies are cached so reruns stay call-free; transport failures are
  // not, so a later run can retry them.
  if (deterministic_failure) cache.put(key, CacheEntry{raw, std::nullopt, reason, max_attempts});
  out.rejection = Rejection{key.sample_id, reason, max_attempts};
  return out;
}

}  // namespace

double LabelingResult::rejection_rate() const {
  return dataset.empty() ? 0.0 : static_cast<double>(rejections.size()) / static_cast<double>(dataset.size());
}

LabelingResult pseudo_label_dataset(const Dataset& dataset, LLMClient& client, const RubricPrompt& rubric,
                                    const LabelingOptions& options, PseudoLabelCache& cache) {
  const std::string model = client.model_name();
  const std::size_t n = dataset.size();
  std::vector<Outcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      try {
        outcomes[i] = label_one(dataset[i], client, rubric, model, options, cache);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(options.concurrency, 1, std::max<std::size_t>(1, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  LabelingResult result;
  std::vector<Record> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Outcome& o = outcomes[i];
    result.client_calls += o.calls;
    if (o.from_cache) ++result.cache_hits;
    if (o.score) {
      records.push_back(dataset[i].with_pseudo_label(*o.score, Provenance{model, rubric.prompt_hash()}));
    } else {
      records.push_back(dataset[i].without_pseudo_label());
      result.rejections.push_back(*o.rejection);
    }
  }
  result.dataset = Dataset(std::move(records), dataset.split());
  return result;
}

std::string rejection_csv(const std::vector<Rejection>& rejections) {
  std::string out = "sample_id,reason,attempts\n";
  for (const auto& r : rejections)
    out += csv_escape(r.sample_id) + "," + csv_escape(r.reason) + "," + std::to_string(r.attempts) + "\n";
  return out;
}

}  // namespace gramscore
