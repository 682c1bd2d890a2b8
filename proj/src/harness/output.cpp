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

#include "harness/output.hpp"

#include <filesystem>
#include <system_error>

#include <json.hpp>

#include "core/error.hpp"
#include "core/strings.hpp"

namespace gramscore {

namespace fs = std::filesystem;

void prepare_output_dir(const std::string& dir, bool overwrite) {
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec)) throw ConfigError("output path " + dir + " exists and is not a directory");
    if (!fs::is_empty(dir, ec) && !overwrite)
      throw ConfigError("output directory " + dir + " is not empty; pass --overwrite to reuse it");
    return;
  }
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

OutputWriter::OutputWriter(std::string dir, std::string command, const ExperimentConfig& config)
    : dir_(std::move(dir)), command_(std::move(command)), config_hash_(config.hash()), seed_(config.train.seed) {}

std::string OutputWriter::path(const std::string& name) const { return (fs::path(dir_) / name).string(); }

std::string OutputWriter::write(const std::string& name, std::string_view content) {
  const std::string p = path(name);
  std::error_code ec;
  fs::create_directories(fs::path(p).parent_path(), ec);
  write_file(p, content);
  files_.push_back(p);
  return p;
}

std::string OutputWriter::write_csv(const std::string& name, std::string_view content) {
  const std::string p = write(name, content);
  const auto newline = content.find('\n');
  const auto header = split_csv_line(content.substr(0, newline));
  std::size_t rows = 0;
  for (char c : content) rows += c == '\n';
  nlohmann::ordered_json meta;
  meta["tool"] = "gramscore";
  meta["version"] = GRAMSCORE_VERSION;
  meta["command"] = command_;
  meta["config_hash"] = config_hash_;
  meta["seed"] = seed_;
  meta["file"] = name;
  meta["columns"] = header;
  meta["rows"] = rows > 0 ? rows - 1 : 0;
  write(name + ".meta.json", meta.dump(2) + "\n");
  return p;
}

}  // namespace gramscore
