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

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "core/error.hpp"
#include "core/strings.hpp"
#include "pseudo_label/cache.hpp"
#include "pseudo_label/client.hpp"
#include "pseudo_label/labeler.hpp"
#include "pseudo_label/prompt.hpp"
#include "support.hpp"

using namespace gramscore;
using gramscore::testing::make_record;
using gramscore::testing::TempDir;

namespace {

// Replies with a scripted function of the response text.
class ScriptedClient final : public LLMClient {
 public:
  using Fn = std::function<std::string(const std::string& text)>;
  explicit ScriptedClient(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const std::string& prompt) override {
    ++calls;
    return fn_(extract_response(prompt).value());
  }
  std::string model_name() const override { return "scripted"; }
  std::atomic<int> calls{0};

 private:
  Fn fn_;
};

Dataset unlabeled(std::size_t n) {
  std::vector<Record> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(make_record("s" + std::to_string(i), "Text number " + std::to_string(i) + "."));
  return Dataset(std::move(r), SplitTag::kTrain);
}

}  // namespace

TEST_CASE("prompt contains rubric, instruction and sample") {
  const RubricPrompt rubric = RubricPrompt::default_prompt();
  const std::string p = build_prompt(rubric, "I goes home");
  CHECK(p.find(rubric.rubric_text()) != std::string::npos);
  CHECK(p.find("I goes home") != std::string::npos);
  CHECK(p.find(kScoreInstruction) != std::string::npos);
  CHECK(build_prompt(rubric, "I goes home") == p);
  CHECK(extract_response(p) == "I goes home");
}

TEST_CASE("delimiters inside a sample survive extraction") {
  const RubricPrompt rubric = RubricPrompt::default_prompt();
  const std::vector<std::string> pieces = {"[", "]", "\\", "[[", "a", " ", std::string(kResponseClose),
                                           std::string(kResponseOpen), "[\\", "\n", "{response}"};
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text = "x";
    const int len = 1 + static_cast<int>(gen() % 12);
    for (int k = 0; k < len; ++k) text += pieces[gen() % pieces.size()];
    const auto back = extract_response(build_prompt(rubric, text));
    REQUIRE(back.has_value());
    CHECK(*back == text);
  }
}

TEST_CASE("prompt hash") {
  const RubricPrompt a = RubricPrompt::default_prompt();
  CHECK(a.prompt_hash() == RubricPrompt::default_prompt().prompt_hash());
  const RubricPrompt b(std::string(default_rubric_text()) + " Be strict.", std::string(default_template_text()));
  CHECK(a.prompt_hash() != b.prompt_hash());
  CHECK_THROWS_AS(RubricPrompt("rubric", "no placeholder"), ConfigError);
  CHECK_THROWS_AS(RubricPrompt("   ", std::string(default_template_text())), ConfigError);
}

TEST_CASE("shipped rubric asset matches the built-in rubric") {
  const std::string asset = std::string(GRAMSCORE_SOURCE_DIR) + "/assets/rubric.txt";
  CHECK(read_file(asset) == default_rubric_text());
  CHECK(RubricPrompt::from_file(asset).prompt_hash() == RubricPrompt::default_prompt().prompt_hash());
}

TEST_CASE("parse_score") {
  CHECK(parse_score("Score: 4") == 4.0);
  CHECK(parse_score("3.5 \xE2\x80\x94 minor agreement errors") == 3.5);
  CHECK(parse_score("  5") == 5.0);
  CHECK(parse_score("1") == 1.0);
  CHECK_THROWS_AS(parse_score("excellent grammar"), ParseError);
  CHECK_THROWS_AS(parse_score(""), ParseError);
  CHECK_THROWS_AS(parse_score("7"), OutOfRangeError);
  CHECK_THROWS_AS(parse_score("0.5"), OutOfRangeError);
}

TEST_CASE("labeling with a constant client") {
  ScriptedClient client([](const std::string&) { return "4"; });
  PseudoLabelCache cache;
  const auto result = pseudo_label_dataset(unlabeled(6), client, RubricPrompt::default_prompt(), {}, cache);
  CHECK(result.rejections.empty());
  for (const Record& r : result.dataset.records()) {
    REQUIRE(r.pseudo_score());
    CHECK(*r.pseudo_score() == 4.0);
    CHECK(r.provenance()->model == "scripted");
  }
}

TEST_CASE("one garbage reply is rejected and the rest labeled") {
  ScriptedClient client([](const std::string& text) { return text == "Text number 2." ? "no idea" : "3"; });
  PseudoLabelCache cache;
  LabelingOptions opts;
  opts.retries = 2;
  const auto result = pseudo_label_dataset(unlabeled(5), client, RubricPrompt::default_prompt(), opts, cache);
  REQUIRE(result.rejections.size() == 1);
  CHECK(result.rejections[0].sample_id == "s2");
  CHECK(result.rejections[0].attempts == 2);
  CHECK(result.rejections[0].reason.find("parse") != std::string::npos);
  CHECK_FALSE(result.dataset[2].pseudo_score());
  for (std::size_t i : {0u, 1u, 3u, 4u}) CHECK(result.dataset[i].pseudo_score() == 3.0);
  CHECK(client.calls == 4 + 2);
  CHECK(rejection_csv(result.rejections).rfind("sample_id,reason,attempts\n", 0) == 0);
}

TEST_CASE("second run over the same cache makes no calls") {
  TempDir dir;
  const Dataset d = unlabeled(20);
  MockClient first(1, 0.3);
  LabelingResult a, b;
  {
    PseudoLabelCache cache(dir.file("cache.jsonl"));
    a = pseudo_label_dataset(d, first, RubricPrompt::default_prompt(), {}, cache);
  }
  CHECK(first.calls() == 20);
  MockClient second(1, 0.3);
  PseudoLabelCache reloaded(dir.file("cache.jsonl"));
  b = pseudo_label_dataset(d, second, RubricPrompt::default_prompt(), {}, reloaded);
  CHECK(second.calls() == 0);
  CHECK(b.cache_hits == 20);
  CHECK(b.dataset == a.dataset);
}

TEST_CASE("cache policy: bad replies are stored, transport failures are not") {
  TempDir dir;
  std::atomic<int> transport_calls{0};
  ScriptedClient client([&](const std::string& text) -> std::string {
    if (text == "Text number 0.") return "garbage";
    if (text == "Text number 1.") {
      ++transport_calls;
      throw TransportError("connection refused");
    }
    return "2";
  });
  {
    PseudoLabelCache cache(dir.file("c.jsonl"));
    const auto r = pseudo_label_dataset(unlabeled(3), client, RubricPrompt::default_prompt(), {}, cache);
    CHECK(r.rejections.size() == 2);
    CHECK(cache.size() == 2);
  }
  CHECK(transport_calls == 3);
  PseudoLabelCache cache(dir.file("c.jsonl"));
  const auto r = pseudo_label_dataset(unlabeled(3), client, RubricPrompt::default_prompt(), {}, cache);
  CHECK(r.rejections.size() == 2);
  CHECK(transport_calls == 6);  // only the transport failure was retried
  CHECK(r.cache_hits == 2);
}

TEST_CASE("a different prompt hash misses the cache") {
  PseudoLabelCache cache;
  MockClient client(0, 0.0);
  const Dataset d = unlabeled(4);
  pseudo_label_dataset(d, client, RubricPrompt::default_prompt(), {}, cache);
  const RubricPrompt edited(std::string(default_rubric_text()) + "\nExtra line.", std::string(default_template_text()));
  const auto r = pseudo_label_dataset(d, client, edited, {}, cache);
  CHECK(r.cache_hits == 0);
  CHECK(client.calls() == 8);
}

TEST_CASE("concurrent labeling matches serial labeling") {
  const Dataset d = unlabeled(64);
  MockClient c1(9, 0.5), c2(9, 0.5);
  PseudoLabelCache k1, k2;
  LabelingOptions serial, parallel;
  parallel.concurrency = 8;
  const auto a = pseudo_label_dataset(d, c1, RubricPrompt::default_prompt(), serial, k1);
  const auto b = pseudo_label_dataset(d, c2, RubricPrompt::default_prompt(), parallel, k2);
  CHECK(a.dataset == b.dataset);
}

TEST_CASE("malformed cache line is reported with its number") {
  TempDir dir;
  write_file(dir.file("c.jsonl"), "\n{\"nope\": 1}\n");
  try {
    PseudoLabelCache cache(dir.file("c.jsonl"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("mock client") {
  CHECK(MockClient::rule_score("The children played in the garden after school.") == 5.0);
  CHECK(MockClient::rule_score("um the the children like played um in garden") < 5.0);

  MockClient a(4, 0.5), b(4, 0.5);
  const RubricPrompt rubric = RubricPrompt::default_prompt();
  for (int i = 0; i < 50; ++i) {
    const std::string p = build_prompt(rubric, "Sample " + std::to_string(i) + " is here.");
    CHECK(a.complete(p) == b.complete(p));
  }

  MockClient noisy(17, 1.0);
  std::map<int, int> counts;
  for (int i = 0; i < 1000; ++i)
    ++counts[static_cast<int>(parse_score(noisy.complete(build_prompt(rubric, "Reply " + std::to_string(i) + "."))))];
  CHECK(counts.size() == 5);
  for (const auto& [level, n] : counts) {
    CAPTURE(level);
    CHECK(n >= 150);
    CHECK(n <= 250);
  }
}

TEST_CASE("live client talks to an OpenAI-style endpoint") {
  httplib::Server server;
  std::mutex m;
  nlohmann::json last_body;
  std::string last_auth;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard<std::mutex> lock(m);
    last_body = nlohmann::json::parse(req.body);
    last_auth = req.get_header_value("Authorization");
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"Score: 3"}}]})", "application/json");
  });
  server.Post("/broken", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  server.Post("/odd", [](const httplib::Request&, httplib::Response& res) { res.set_content("{}", "application/json"); });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const std::string base = "http://127.0.0.1:" + std::to_string(port);
  LiveClient client({base + "/v1/chat/completions", "sk-test", "gpt-4", 5.0});
  CHECK(client.complete("hello") == "Score: 3");
  {
    std::lock_guard<std::mutex> lock(m);
    CHECK(last_auth == "Bearer sk-test");
    CHECK(last_body["model"] == "gpt-4");
    CHECK(last_body["temperature"] == 0);
    CHECK(last_body["messages"][0]["content"] == "hello");
  }
  LiveClient broken({base + "/broken", "k", "gpt-4", 5.0});
  CHECK_THROWS_AS(broken.complete("x"), TransportError);
  LiveClient odd({base + "/odd", "k", "gpt-4", 5.0});
  CHECK_THROWS_AS(odd.complete("x"), TransportError);

  server.stop();
  t.join();
  LiveClient gone({base + "/v1/chat/completions", "k", "gpt-4", 1.0});
  CHECK_THROWS_AS(gone.complete("x"), TransportError);
}

TEST_CASE("live client configuration comes from the environment") {
  unsetenv(kEndpointEnv);
  unsetenv(kApiKeyEnv);
  CHECK_THROWS_AS(LiveClient::config_from_environment(), ConfigError);
  setenv(kEndpointEnv, "http://127.0.0.1:9/v1/chat/completions", 1);
  CHECK_THROWS_AS(LiveClient::config_from_environment(), ConfigError);
  setenv(kApiKeyEnv, "secret", 1);
  setenv(kModelEnv, "other-model", 1);
  const auto c = LiveClient::config_from_environment();
  CHECK(c.api_key == "secret");
  CHECK(c.model == "other-model");
  unsetenv(kEndpointEnv);
  unsetenv(kApiKeyEnv);
  unsetenv(kModelEnv);
  CHECK_THROWS_AS(LiveClient({"ftp://x", "k", "m", 1.0}), ConfigError);
}
