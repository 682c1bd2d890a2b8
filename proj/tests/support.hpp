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

#ifndef GRAMSCORE_TESTS_SUPPORT_HPP
#define GRAMSCORE_TESTS_SUPPORT_HPP

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "dataset/dataset.hpp"

namespace gramscore::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("gramscore_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline Record make_record(const std::string& id, const std::string& text, std::vector<double> ratings = {},
                          const std::string& candidate = "") {
  return Record(Sample{id, candidate.empty() ? "c_" + id : candidate, text, Modality::kWritten}, std::move(ratings));
}

inline Dataset labeled(const std::vector<std::string>& texts, const std::vector<double>& labels) {
  std::vector<Record> records;
  for (std::size_t i = 0; i < texts.size(); ++i)
    records.push_back(make_record("s" + std::to_string(i), texts[i]).with_pseudo_label(labels[i], {"test", "h"}));
  return Dataset(std::move(records), SplitTag::kTrain);
}

}  // namespace gramscore::testing

#endif  // GRAMSCORE_TESTS_SUPPORT_HPP
