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

#ifndef GRAMSCORE_HARNESS_OUTPUT_HPP
#define GRAMSCORE_HARNESS_OUTPUT_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "harness/config.hpp"

namespace gramscore {

using LogSink = std::function<void(std::string_view)>;

// Creates `dir` (and parents). An existing non-empty directory needs
// overwrite consent; otherwise ConfigError.
void prepare_output_dir(const std::string& dir, bool overwrite);

// Writes command artifacts under one directory. Every CSV gets a sidecar
// <name>.meta.json holding the tool version, command, config hash, seed, and
// column names. Nothing time-dependent is recorded, so reruns are
// byte-identical.
class OutputWriter {
 public:
  OutputWriter(std::string dir, std::string command, const ExperimentConfig& config);

  std::string path(const std::string& name) const;
  std::string write(const std::string& name, std::string_view content);
  std::string write_csv(const std::string& name, std::string_view content);

  const std::vector<std::string>& files() const noexcept { return files_; }
  const std::string& dir() const noexcept { return dir_; }

 private:
  std::string dir_;
  std::string command_;
  std::string config_hash_;
  std::uint64_t seed_;
  std::vector<std::string> files_;
};

}  // namespace gramscore

#endif  // GRAMSCORE_HARNESS_OUTPUT_HPP
