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

#ifndef GRAMSCORE_PSEUDO_LABEL_CACHE_HPP
#define GRAMSCORE_PSEUDO_LABEL_CACHE_HPP

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

namespace gramscore {

struct CacheKey {
  std::string sample_id;
  std::string prompt_hash;
  std::string model_name;

  friend auto operator<=>(const CacheKey&, const CacheKey&) = default;
};

// A stored outcome. A deterministic failure (unparseable or out-of-range
// reply) is cached with no score so reruns do not re-query.
struct CacheEntry {
  std::string raw_response;
  std::optional<double> score;
  std::string reason;     // failure reason when score is empty
  std::size_t attempts = 1;
};

// Append-only JSONL store. Later lines for a key replace earlier ones. An
// empty path keeps everything in memory. Safe for concurrent use.
class PseudoLabelCache {
 public:
  PseudoLabelCache() = default;
  // Loads existing entries; a missing file is an empty cache. Throws
  // ParseError naming the line for a malformed record.
  explicit PseudoLabelCache(std::string path);

  std::optional<CacheEntry> lookup(const CacheKey& key) const;
  // Appends to the file before updating memory; throws IoError on failure.
  void put(const CacheKey& key, const CacheEntry& entry);

  std::size_t size() const;
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
  mutable std::mutex mutex_;
  std::map<CacheKey, CacheEntry> entries_;
};

}  // namespace gramscore

#endif  // GRAMSCORE_PSEUDO_LABEL_CACHE_HPP
