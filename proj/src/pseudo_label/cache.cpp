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

#include "pseudo_label/cache.hpp"

#include <fstream>

#include <json.hpp>

#include "core/error.hpp"

namespace gramscore {

PseudoLabelCache::PseudoLabelCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CacheKey key{j.at("sample_id").get<std::string>(), j.at("prompt_hash").get<std::string>(),
                   j.at("model_name").get<std::string>()};
      CacheEntry e;
      e.raw_response = j.at("raw_response").get<std::string>();
      if (j.contains("score") && !j["score"].is_null()) e.score = j["score"].get<double>();
      e.reason = j.value("reason", "");
      e.attempts = j.value("attempts", std::size_t{1});
      entries_[std::move(key)] = std::move(e);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(path_ + ":" + std::to_string(line_no) + ": malformed cache record: " + ex.what(), line_no);
    }
  }
}

std::optional<CacheEntry> PseudoLabelCache::lookup(const CacheKey& key) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void PseudoLabelCache::put(const CacheKey& key, const CacheEntry& entry) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!path_.empty()) {
    nlohmann::json j = {{"sample_id", key.sample_id},   {"prompt_hash", key.prompt_hash},
                        {"model_name", key.model_name}, {"raw_response", entry.raw_response},
                        {"attempts", entry.attempts}};
    j["score"] = entry.score ? nlohmann::json(*entry.score) : nlohmann::json(nullptr);
    if (!entry.reason.empty()) j["reason"] = entry.reason;
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    out << j.dump() << '\n';
    out.flush();
    if (!out) throw IoError("cannot append to pseudo-label cache " + path_);
  }
  entries_[key] = entry;
}

std::size_t PseudoLabelCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

}  // namespace gramscore
