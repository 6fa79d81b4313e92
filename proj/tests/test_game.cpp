// Copyright 2026 The tgsolve Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "support/test_support.hpp"
#include "tgsolve/errors.hpp"
#include "tgsolve/game.hpp"
#include "tgsolve/game_io.hpp"

using namespace tgs;

namespace {

void check_games_equal(const Game& a, const Game& b, double prob_tol = 1e-12) {
  REQUIRE(a.size() == b.size());
  for (std::uint32_t v = 0; v < a.size(); ++v) {
    CHECK(a.id(v) == b.id(v));
    CHECK(a.owner(v) == b.owner(v));
    CHECK(a.reward(v) == b.reward(v));
    auto sa = a.successors(v), sb = b.successors(v);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t k = 0; k < sa.size(); ++k) CHECK(sa[k] == sb[k]);
    auto da = a.chance_dist(v), db = b.chance_dist(v);
    REQUIRE(da.size() == db.size());
    for (std::size_t k = 0; k < da.size(); ++k) {
      CHECK(std::abs(da[k] - db[k]) <= prob_tol);
    }
  }
}

}  // namespace

TEST_CASE("validate accepts a well-formed game") {
  Game g;
  g.add_vertex("a", Owner::kMax, 0.0);
  g.add_vertex("b", Owner::kMin, 1.0);
  g.add_vertex("c", Owner::kChance, 0.5);
  g.add_edge("a", "b");
  g.add_edge("b", "c");
  g.add_edge("c", "a", 0.5);
  g.add_edge("c", "b", 0.5);
  CHECK(validate(g).empty());
}

TEST_CASE("validate flags a successor-less vertex") {
  Game g;
  g.add_vertex("a", Owner::kMax, 0.0);
  g.add_vertex("b", Owner::kChance, 0.0);
  g.add_edge("a", "b");
  g.add_edge("b", "b", 1.0);
  g.add_vertex("stuck", Owner::kMin, 0.0);
  auto violations = validate(g);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].vertex_id == "stuck");
  CHECK(violations[0].rule == "totality");
}

TEST_CASE("validate flags a distribution that does not sum to 1") {
  Game g;
  g.add_vertex("c", Owner::kChance, 0.0);
  g.add_vertex("a", Owner::kChance, 0.0);
  g.add_edge("c", "a", 0.5);
  g.add_edge("c", "c", 0.4);
  g.add_edge("a", "a", 1.0);
  auto violations = validate(g);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "dist-sum");
}

TEST_CASE("validate flags zero-probability edges") {
  Game g;
  g.add_vertex("c", Owner::kChance, 0.0);
  g.add_edge("c", "c", 1.0);
  g.add_edge("c", "c", 0.0);
  auto violations = validate(g);
  bool found = false;
  for (const auto& v : violations) found |= v.rule == "dist-positive";
  CHECK(found);
}

TEST_CASE("duplicate and empty ids are construction errors") {
  Game g;
  g.add_vertex("a", Owner::kMax, 0.0);
  CHECK_THROWS_AS(g.add_vertex("a", Owner::kMin, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_vertex("", Owner::kMin, 0.0), std::invalid_argument);
}

TEST_CASE("load: minimal self-loop document") {
  Game g = load_game(
      R"({"vertices":[{"id":"v","owner":"chance","reward":0.0,"succ":["v"],"dist":[1.0]}]})");
  CHECK(g.size() == 1);
  CHECK(g.owner(0) == Owner::kChance);
  CHECK(g.successors(0).size() == 1);
}

TEST_CASE("load rejects malformed documents") {
  CHECK_THROWS_AS(load_game("{"), ParseError);
  CHECK_THROWS_AS(
      load_game(
          R"({"vertices":[{"id":"v","owner":"player","reward":0,"succ":["v"]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      load_game(
          R"({"vertices":[{"id":"v","owner":"max","reward":0,"succ":["v"],"extra":1}]})"),
      ParseError);
  CHECK_THROWS_AS(
      load_game(R"({"vertices":[],"more":true})"), ParseError);
  // dist on a player vertex
  CHECK_THROWS_AS(
      load_game(
          R"({"vertices":[{"id":"v","owner":"max","reward":0,"succ":["v"],"dist":[1.0]}]})"),
      ParseError);
  // unknown successor
  CHECK_THROWS_AS(
      load_game(
          R"({"vertices":[{"id":"v","owner":"max","reward":0,"succ":["w"]}]})"),
      ParseError);
  // duplicate id
  CHECK_THROWS_AS(
      load_game(
          R"({"vertices":[{"id":"v","owner":"max","reward":0,"succ":["v"]},
                          {"id":"v","owner":"max","reward":0,"succ":["v"]}]})"),
      ParseError);
  // validation failure: totality
  CHECK_THROWS_AS(
      load_game(R"({"vertices":[{"id":"v","owner":"max","reward":0,"succ":[]}]})"),
      ValidationError);
}

TEST_CASE("load renormalizes near-1 distributions and rejects bad sums") {
  Game g = load_game(
      R"({"vertices":[{"id":"c","owner":"chance","reward":0,
           "succ":["c","d"],"dist":[0.3333333333,0.6666666667]},
          {"id":"d","owner":"chance","reward":0,"succ":["d"],"dist":[1.0]}]})");
  auto dist = g.chance_dist(0);
  CHECK(dist[0] + dist[1] == 1.0);
  CHECK_THROWS_AS(
      load_game(
          R"({"vertices":[{"id":"c","owner":"chance","reward":0,
               "succ":["c","d"],"dist":[0.5,0.4]},
              {"id":"d","owner":"chance","reward":0,"succ":["d"],"dist":[1.0]}]})"),
      ValidationError);
}

TEST_CASE("save preserves rewards exactly") {
  Game g;
  g.add_vertex("v", Owner::kMax, 2.5);
  g.add_edge("v", "v");
  Game reloaded = load_game(save_game(g));
  CHECK(reloaded.reward(0) == 2.5);
}

TEST_CASE("load(save(g)) round-trips random games") {
  std::mt19937_64 rng(20260809);
  for (int i = 0; i < 50; ++i) {
    Game g = test::random_game(rng);
    Game back = load_game(save_game(g));
    check_games_equal(g, back);
    // A second trip is byte-stable.
    CHECK(save_game(back) == save_game(back));
  }
}

TEST_CASE("save/load keeps awkward doubles bit-equal") {
  Game g;
  g.add_vertex("v", Owner::kChance, 0.1 + 0.2);  // 0.30000000000000004
  g.add_vertex("w", Owner::kChance, 1.0 / 3.0);
  g.add_edge("v", "w", 1.0 / 3.0);
  g.add_edge("v", "v", 2.0 / 3.0);
  g.add_edge("w", "w", 1.0);
  Game back = load_game(save_game(g));
  CHECK(back.reward(0) == 0.1 + 0.2);
  CHECK(back.reward(1) == 1.0 / 3.0);
  // Probabilities within 1e-12 (renormalization may move them by ulps).
  CHECK(std::abs(back.chance_dist(0)[0] - 1.0 / 3.0) < 1e-12);
}
