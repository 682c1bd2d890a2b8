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

#include <chrono>
#include <cstdlib>
#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "core/error.hpp"
#include "pseudo_label/client.hpp"

namespace gramscore {

bool live_client_supports_https() {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
  return true;
#else
  return false;
#endif
}

LiveClient::LiveClient(LiveClientConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) throw ConfigError(std::string(kEndpointEnv) + " is not set");
  if (config_.api_key.empty()) throw ConfigError(std::string(kApiKeyEnv) + " is not set");
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.endpoint, m, kUrl))
    throw ConfigError("LLM endpoint must be an http(s) URL: " + config_.endpoint);
  scheme_host_port_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/v1/chat/completions";
  if (scheme_host_port_.rfind("https://", 0) == 0 && !live_client_supports_https())
    throw ConfigError("this build has no TLS support; use an http:// endpoint");
}

LiveClientConfig LiveClient::config_from_environment() {
  LiveClientConfig c;
  const char* endpoint = std::getenv(kEndpointEnv);
  const char* key = std::getenv(kApiKeyEnv);
  const char* model = std::getenv(kModelEnv);
  if (!endpoint || !*endpoint) throw ConfigError(std::string("live backend requires ") + kEndpointEnv);
  if (!key || !*key) throw ConfigError(std::string("live backend requires ") + kApiKeyEnv);
  c.endpoint = endpoint;
  c.api_key = key;
  if (model && *model) c.model = model;
  return c;
}

std::string LiveClient::complete(const std::string& prompt) {
  httplib::Client cli(scheme_host_port_);
  const auto timeout = std::chrono::duration<double>(config_.timeout_seconds);
  cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  cli.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  cli.set_bearer_token_auth(config_.api_key);

  nlohmann::json body = {{"model", config_.model},
                         {"temperature", 0},
                         {"messages", {{{"role", "user"}, {"content", prompt}}}}};
  auto res = cli.Post(path_, body.dump(), "application/json");
  if (!res) throw TransportError("LLM request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw TransportError("LLM endpoint returned HTTP " + std::to_string(res->status));
  try {
    const auto reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("unexpected LLM reply: ") + e.what());
  }
}

}  // namespace gramscore
