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

#include <random>

#include "core/error.hpp"
#include "core/strings.hpp"
#include "dataset/dataset.hpp"
#include "support.hpp"

using namespace gramscore;
using gramscore::testing::make_record;
using gramscore::testing::TempDir;

namespace {

const char* kThree =
    R"({"id":"a","candidate_id":"c1","text":"I like tea.","modality":"written","ratings":[4.0,5.0]})"
    "\n"
    R"({"id":"b","candidate_id":"c2","text":"She go to school.","modality":"spoken","ratings":[2]})"
    "\n"
    R"({"id":"c","candidate_id":"c3","text":"We are here.","modality":"written","ratings":[3,3,4]})"
    "\n";

}  // namespace

TEST_CASE("load keeps file order and recomputes the gold score") {
  TempDir dir;
  write_file(dir.file("d.jsonl"), kThree);
  const Dataset d = load_dataset(dir.file("d.jsonl"), true);
  REQUIRE(d.size() == 3);
  CHECK(d[0].sample().id == "a");
  CHECK(d[1].sample().id == "b");
  CHECK(d[2].sample().id == "c");
  CHECK(d[1].sample().modality == Modality::kSpoken);
  CHECK(d[0].gold_score() == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(d[2].gold_score() == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("load errors") {
  TempDir dir;
  SUBCASE("duplicate id") {
    write_file(dir.file("d.jsonl"), std::string(kThree) +
                                        R"({"id":"a","candidate_id":"c9","text":"Hi there.","modality":"written"})" "\n");
    CHECK_THROWS_AS(load_dataset(dir.file("d.jsonl"), false), ValidationError);
  }
  SUBCASE("malformed line names its number") {
    write_file(dir.file("d.jsonl"),
               R"({"id":"a","candidate_id":"c1","text":"I like tea.","modality":"written"})" "\n{oops\n");
    try {
      load_dataset(dir.file("d.jsonl"), false);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("ratings expected but missing") {
    write_file(dir.file("d.jsonl"),
               R"({"id":"a","candidate_id":"c1","text":"I like tea.","modality":"written"})" "\n");
    CHECK_THROWS_AS(load_dataset(dir.file("d.jsonl"), true), ValidationError);
  }
  SUBCASE("rating out of range") {
    write_file(dir.file("d.jsonl"),
               R"({"id":"a","candidate_id":"c1","text":"I like tea.","modality":"written","ratings":[6]})" "\n");
    CHECK_THROWS_AS(load_dataset(dir.file("d.jsonl"), true), Error);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_dataset(dir.file("nope.jsonl"), false), IoError); }
}

TEST_CASE("save then load round-trips every field") {
  TempDir dir;
  std::vector<Record> records = {
      make_record("x1", "The dog runs.", {4.0, 4.5}),
      make_record("x2", "Quote \"inside\" and unicode caf\xC3\xA9.").with_pseudo_label(3.25, {"mock", "abc"}),
      make_record("x3", "Third one here.", {1.0}).with_pseudo_label(1.0 + 1.0 / 3.0, {"m", "h"}),
  };
  const Dataset d(records, SplitTag::kTrain);
  save_dataset(d, dir.file("r.jsonl"));
  const Dataset back = load_dataset(dir.file("r.jsonl"), false);
  CHECK(back == d);
}

TEST_CASE("gold score lies between the extreme ratings") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> score(1.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> r(1 + trial % 5);
    for (double& x : r) x = score(gen);
    const Record rec = make_record("s", "Some words here.", r);
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    CHECK(*lo <= rec.gold_score() + 1e-12);
    CHECK(rec.gold_score() <= *hi + 1e-12);
  }
}

TEST_CASE("split integrity") {
  const Dataset train({make_record("a", "One two.", {}, "c1"), make_record("b", "Three four.", {}, "c7")},
                      SplitTag::kTrain);
  const Dataset disjoint({make_record("c", "Five six.", {3}, "c2")}, SplitTag::kTest);
  const Dataset shared({make_record("d", "Seven eight.", {3}, "c7")}, SplitTag::kTest);
  CHECK(check_split_integrity(train, disjoint).empty());
  CHECK(check_split_integrity(train, shared) == std::set<std::string>{"c7"});
  CHECK(check_split_integrity(Dataset({}, SplitTag::kTrain), shared).empty());
  CHECK(check_split_integrity(train, train) == std::set<std::string>{"c1", "c7"});
}

TEST_CASE("score histogram") {
  const auto h = score_histogram(std::vector<double>{1, 1, 5}, 1.0);
  REQUIRE(h.size() == 5);
  CHECK(h[0] == std::make_pair(1.0, std::size_t{2}));
  for (int i = 1; i < 4; ++i) CHECK(h[i].second == 0);
  CHECK(h[4] == std::make_pair(5.0, std::size_t{1}));

  CHECK_THROWS_AS(score_histogram(std::vector<double>{}, 1.0), ValidationError);
  CHECK_THROWS_AS(score_histogram(Dataset({make_record("u", "No score.")}, SplitTag::kTrain), 1.0), ValidationError);

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> score(1.0, 5.0);
  std::vector<double> s(100);
  for (double& x : s) x = score(gen);
  for (double width : {0.25, 0.5, 1.0, 3.0}) {
    std::size_t total = 0;
    for (const auto& [bin, count] : score_histogram(s, width)) total += count;
    CHECK(total == 100);
  }
}
