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

#ifndef GRAMSCORE_CORE_ERROR_HPP
#define GRAMSCORE_CORE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gramscore {

// Mirrors gs_status in the C header; keep the numeric values in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kParse = 2,
  kValidation = 3,
  kIo = 4,
  kConfig = 5,
  kTransport = 6,
  kDivergence = 7,
  kUndefined = 8,
  kRejectionThreshold = 9,
  kOutOfRange = 10,
  kInternal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorCode::kValidation, message) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(ErrorCode::kParse, message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorCode::kIo, message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorCode::kConfig, message) {}
};

// Raised when a correlation or similar statistic has no defined value
// (zero-variance input).
class UndefinedValueError : public Error {
 public:
  explicit UndefinedValueError(const std::string& message)
      : Error(ErrorCode::kUndefined, message) {}
};

class OutOfRangeError : public Error {
 public:
  explicit OutOfRangeError(const std::string& message)
      : Error(ErrorCode::kOutOfRange, message) {}
};

class TransportError : public Error {
 public:
  explicit TransportError(const std::string& message)
      : Error(ErrorCode::kTransport, message) {}
};

class TrainingDivergence : public Error {
 public:
  TrainingDivergence(const std::string& message, std::vector<std::size_t> indices)
      : Error(ErrorCode::kDivergence, message), indices_(std::move(indices)) {}
  const std::vector<std::size_t>& batch_indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

}  // namespace gramscore

#endif  // GRAMSCORE_CORE_ERROR_HPP
