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

#ifndef GRAMSCORE_PSEUDO_LABEL_CLIENT_HPP
#define GRAMSCORE_PSEUDO_LABEL_CLIENT_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

namespace gramscore {

// Text completion endpoint. Implementations must be safe to call from
// several threads at once; the same prompt may be sent again on retry.
// complete() throws TransportError for delivery failures.
class LLMClient {
 public:
  virtual ~LLMClient() = default;
  virtual std::string complete(const std::string& prompt) = 0;
  virtual std::string model_name() const = 0;
};

// Offline stand-in. The score of a prompt's response text is
//   1 + 4 * exp(-d / 0.2),  d = detected error markers per word,
// i.e. 5 for clean text, falling towards 1 as errors accumulate. A
// `corruption_rate` fraction of prompts (chosen by a hash of noise_seed and
// the prompt) instead get a uniform integer in 1..5.
class MockClient final : public LLMClient {
 public:
  MockClient(std::uint64_t noise_seed, double corruption_rate, std::string model_name = "mock-rubric-v1");

  std::string complete(const std::string& prompt) override;
  std::string model_name() const override { return model_name_; }

  // Noise-free score for a response text.
  static double rule_score(std::string_view text);
  bool is_corrupted(const std::string& prompt) const;
  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  std::uint64_t noise_seed_;
  double corruption_rate_;
  std::string model_name_;
  std::atomic<std::size_t> calls_{0};
};

// Environment variables read by LiveClient::from_environment.
inline constexpr const char* kEndpointEnv = "GRAMSCORE_LLM_ENDPOINT";
inline constexpr const char* kApiKeyEnv = "GRAMSCORE_LLM_API_KEY";
inline constexpr const char* kModelEnv = "GRAMSCORE_LLM_MODEL";
inline constexpr const char* kDefaultLiveModel = "gpt-4";

struct LiveClientConfig {
  std::string endpoint;  // full chat-completions URL
  std::string api_key;
  std::string model = kDefaultLiveModel;
  double timeout_seconds = 60.0;
};

// OpenAI-compatible chat-completions client (temperature 0, one message).
class LiveClient final : public LLMClient {
 public:
  explicit LiveClient(LiveClientConfig config);

  // Throws ConfigError when the endpoint or key variable is unset.
  static LiveClientConfig config_from_environment();

  std::string complete(const std::string& prompt) override;
  std::string model_name() const override { return config_.model; }

 private:
  LiveClientConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

// True when this build can reach https endpoints.
bool live_client_supports_https();

}  // namespace gramscore

#endif  // GRAMSCORE_PSEUDO_LABEL_CLIENT_HPP
