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

#include <random>

#include "support/test_support.hpp"
#include "tgsolve/bellman.hpp"
#include "tgsolve/errors.hpp"
#include "tgsolve/eval.hpp"
#include "tgsolve/strategy.hpp"
#include "tgsolve/strategy_io.hpp"

using namespace tgs;

namespace {

// One Min vertex over three absorbing chains.
Game min_fork(double a, double b, double c) {
  Game g;
  g.add_vertex("u", Owner::kMin, 0.0);
  g.add_vertex("a", Owner::kChance, a);
  g.add_vertex("b", Owner::kChance, b);
  g.add_vertex("c", Owner::kChance, c);
  g.add_vertex("t", Owner::kChance, 0.0);
  g.add_edge("u", "a");
  g.add_edge("u", "b");
  g.add_edge("u", "c");
  g.add_edge("a", "t", 1.0);
  g.add_edge("b", "t", 1.0);
  g.add_edge("c", "t", 1.0);
  g.add_edge("t", "t", 1.0);
  return g;
}

}  // namespace

TEST_CASE("min_md_optimal breaks ties toward the first minimizer") {
  Game g = min_fork(4.0, 2.0, 2.0);
  SolveReport solve = value_iterate(g);
  MDStrategy pi = min_md_optimal(g, solve.values);
  CHECK(pi.choices.at("u") == "b");
}

TEST_CASE("min_md_optimal on a game without Min vertices is empty") {
  Game g = test::chain_game(1.0);
  SolveReport solve = value_iterate(g);
  CHECK(min_md_optimal(g, solve.values).choices.empty());
}

TEST_CASE("min_md_optimal is invariant under positive rescaling") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 20; ++round) {
    Game g = test::random_finite_game(rng);
    SolveReport solve = value_iterate(g);
    MDStrategy base = min_md_optimal(g, solve.values);
    for (double c : {0.25, 3.0, 1000.0}) {
      ValueVector scaled(g.size());
      for (std::uint32_t v = 0; v < g.size(); ++v) {
        scaled.set(v, ExtValue(solve.values[v].raw() * c));
      }
      CHECK(min_md_optimal(g, scaled).choices == base.choices);
    }
  }
}

TEST_CASE("best response against min_md_optimal reproduces the solve values") {
  std::mt19937_64 rng(32);
  for (int round = 0; round < 20; ++round) {
    Game g = test::random_finite_game(rng);
    SolveReport solve = value_iterate(g);
    MDStrategy pi = min_md_optimal(g, solve.values);
    SolveReport response = best_response_max(g, pi);
    REQUIRE(response.converged);
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      CHECK(std::abs(response.values[v].raw() - solve.values[v].raw()) <=
            10 * 1e-9 + 1e-12);
    }
  }
}

TEST_CASE("min_eps_hd slack rule") {
  SUBCASE("direct inequality example") {
    Game g;
    g.add_vertex("u", Owner::kMin, 0.0);
    g.add_vertex("a", Owner::kChance, 0.0);
    g.add_vertex("b", Owner::kChance, 0.0);
    g.add_edge("u", "a");
    g.add_edge("u", "b");
    g.add_edge("a", "a", 1.0);
    g.add_edge("b", "b", 1.0);
    ValueVector values(g.size());
    values.set(0, ExtValue(2.0));
    values.set(1, ExtValue(2.4));
    values.set(2, ExtValue(2.6));
    HDStrategy rule = min_eps_hd(g, values, 1.0);
    // Slack at step 0 is 1/2: 2.4 <= 2 + 0.5 admits the first successor.
    CHECK(rule.choose_id(g, "u", 0) == "a");
    // Far beyond the fixed point, the slack vanishes and these values are
    // inconsistent with any fixed point, which is reported.
    CHECK_THROWS_AS(rule.choose(g, 0, 40), Error);
  }
  SUBCASE("coincides with the argmin strategy on converged values") {
    std::mt19937_64 rng(33);
    for (int round = 0; round < 10; ++round) {
      Game g = test::random_finite_game(rng);
      SolveReport solve = value_iterate(g);
      MDStrategy argmin = min_md_optimal(g, solve.values);
      HDStrategy rule = min_eps_hd(g, solve.values, 0.5);
      for (std::uint32_t v = 0; v < g.size(); ++v) {
        if (g.owner(v) != Owner::kMin) continue;
        for (std::size_t step : {0, 1, 5, 20, 60}) {
          std::uint32_t chosen = rule.choose(g, v, step);
          // The slack choice can only be at least as good as the argmin
          // bound allows; both choices satisfy the slack inequality.
          double slack_bound =
              solve.values[v].raw() + 0.5 + 1e-7;
          CHECK(g.reward(v) + solve.values[chosen].raw() <= slack_bound);
        }
        // At a deep step the slack is far below tol; the rule falls back to
        // the argmin choice.
        CHECK(g.id(rule.choose(g, v, 200)) == argmin.choices.at(g.id(v)));
      }
    }
  }
  SUBCASE("replaying a history gives the same choice") {
    Game g = min_fork(1.0, 0.5, 2.0);
    SolveReport solve = value_iterate(g);
    HDStrategy rule = min_eps_hd(g, solve.values, 0.25);
    for (std::size_t step = 0; step < 50; ++step) {
      CHECK(rule.choose(g, 0, step) == rule.choose(g, 0, step));
    }
  }
}

TEST_CASE("max_md_eps") {
  SUBCASE("unique maximizer is found for any eps") {
    Game g;
    g.add_vertex("v", Owner::kMax, 0.0);
    g.add_vertex("lo", Owner::kChance, 1.0);
    g.add_vertex("hi", Owner::kChance, 2.0);
    g.add_vertex("t", Owner::kChance, 0.0);
    g.add_edge("v", "lo");
    g.add_edge("v", "hi");
    g.add_edge("lo", "t", 1.0);
    g.add_edge("hi", "t", 1.0);
    g.add_edge("t", "t", 1.0);
    for (double eps : {0.5, 0.1, 0.01}) {
      MaxMdResult r = max_md_eps(g, eps);
      CHECK(r.strategy.choices.at("v") == "hi");
      CHECK(r.lambda > 0.0);
      CHECK(r.lambda < 1.0);
    }
  }
  SUBCASE("achieves value - eps against the best Min response") {
    std::mt19937_64 rng(34);
    test::RandomGameOptions opts;
    opts.max_player_vertices = 6;
    for (int round = 0; round < 8; ++round) {
      Game g = test::random_finite_game(rng, opts);
      SolveReport solve = value_iterate(g);
      double eps = 0.1;
      MaxMdResult r = max_md_eps(g, eps);
      SolveReport response = best_response_min(g, r.strategy);
      REQUIRE(response.converged);
      CHECK(response.values[0].raw() >=
            solve.values[0].raw() - eps - 1e-7);
    }
  }
}

TEST_CASE("max_eps_hd") {
  SUBCASE("single-path game has the unique strategy") {
    Game g;
    g.add_vertex("v", Owner::kMax, 1.0);
    g.add_vertex("t", Owner::kChance, 0.0);
    g.add_edge("v", "t");
    g.add_edge("t", "t", 1.0);
    for (double eps : {1.0, 0.05}) {
      HDStrategy rule = max_eps_hd(g, eps);
      for (std::size_t step = 0; step < 30; ++step) {
        CHECK(rule.choose_id(g, "v", step) == "t");
      }
    }
  }
  SUBCASE("depth-2 tree walks toward the better leaf") {
    Game g;
    g.add_vertex("root", Owner::kMax, 0.0);
    g.add_vertex("l", Owner::kMax, 0.0);
    g.add_vertex("r", Owner::kMax, 0.0);
    g.add_vertex("leaf0", Owner::kChance, 0.0);
    g.add_vertex("leaf5", Owner::kChance, 5.0);
    g.add_vertex("t", Owner::kChance, 0.0);
    g.add_edge("root", "l");
    g.add_edge("root", "r");
    g.add_edge("l", "leaf0");
    g.add_edge("r", "leaf5");
    g.add_edge("leaf0", "t", 1.0);
    g.add_edge("leaf5", "t", 1.0);
    g.add_edge("t", "t", 1.0);
    // Hand backward induction: 1-step table is (0,0,5,0,5,0), so the root
    // prefers "r" whenever the slack stays below 5.
    HDStrategy rule = max_eps_hd(g, 1.0);
    CHECK(rule.choose_id(g, "root", 0) == "r");
  }
  SUBCASE("identical histories give identical choices") {
    std::mt19937_64 rng(35);
    Game g = test::random_finite_game(rng);
    HDStrategy rule = max_eps_hd(g, 0.25);
    std::uniform_int_distribution<std::uint32_t> pick_v(
        0, static_cast<std::uint32_t>(g.size() - 1));
    std::uniform_int_distribution<std::size_t> pick_step(0, 200);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      std::uint32_t v = pick_v(rng);
      if (g.owner(v) != Owner::kMax) continue;
      std::size_t step = pick_step(rng);
      CHECK(rule.choose(g, v, step) == rule.choose(g, v, step));
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("synthesized strategies only choose listed successors") {
  std::mt19937_64 rng(36);
  for (int round = 0; round < 15; ++round) {
    Game g = test::random_finite_game(rng);
    SolveReport solve = value_iterate(g);
    MDStrategy pi = min_md_optimal(g, solve.values);
    require_covering(g, pi);  // throws if a choice is not a successor
    MaxMdResult sigma = max_md_eps(g, 0.2);
    require_covering(g, sigma.strategy);
    HDStrategy hd_min = min_eps_hd(g, solve.values, 0.2);
    HDStrategy hd_max = max_eps_hd(g, 0.2);
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      auto succ = g.successors(v);
      for (std::size_t step : {0, 3, 17}) {
        if (g.owner(v) == Owner::kMin) {
          std::uint32_t c = hd_min.choose(g, v, step);
          CHECK(std::find(succ.begin(), succ.end(), c) != succ.end());
        }
        if (g.owner(v) == Owner::kMax) {
          std::uint32_t c = hd_max.choose(g, v, step);
          CHECK(std::find(succ.begin(), succ.end(), c) != succ.end());
        }
      }
    }
  }
}

TEST_CASE("mr_from_weights") {
  Game g = min_fork(1.0, 2.0, 3.0);
  SUBCASE("uniform") {
    MRStrategy mr = mr_from_weights(g, "u", {1.0, 1.0, 1.0});
    const auto& p = mr.probs.at("u");
    CHECK(p[0] == doctest::Approx(1.0 / 3));
    CHECK(p[1] == doctest::Approx(1.0 / 3));
    require_covering(g, mr);
  }
  SUBCASE("single successor is a Dirac") {
    Game chain;
    chain.add_vertex("v", Owner::kMax, 0.0);
    chain.add_vertex("t", Owner::kChance, 0.0);
    chain.add_edge("v", "t");
    chain.add_edge("t", "t", 1.0);
    MRStrategy mr = mr_from_weights(chain, "v", {7.0});
    CHECK(mr.probs.at("v") == std::vector<double>{1.0});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(mr_from_weights(g, "u", {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(mr_from_weights(g, "u", {1.0, -1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(mr_from_weights(g, "t", {1.0}), std::invalid_argument);
  }
}

TEST_CASE("strategy files round-trip") {
  Game g = min_fork(1.0, 0.5, 2.0);
  SolveReport solve = value_iterate(g);

  MDStrategy pi = min_md_optimal(g, solve.values);
  Strategy md_back = load_strategy(g, save_strategy(pi));
  CHECK(std::get<MDStrategy>(md_back).choices == pi.choices);

  // The bare wire shape without "type" is accepted as an MD strategy.
  Strategy bare = load_strategy(g, R"({"player":"min","choices":{"u":"b"}})");
  CHECK(std::get<MDStrategy>(bare).choices.at("u") == "b");

  MRStrategy mr = mr_from_weights(g, "u", {1.0, 2.0, 1.0});
  Strategy mr_back = load_strategy(g, save_strategy(g, mr));
  CHECK(std::get<MRStrategy>(mr_back).probs.at("u") == mr.probs.at("u"));

  HDStrategy slack = min_eps_hd(g, solve.values, 0.25);
  Strategy slack_back = load_strategy(g, save_strategy(g, slack));
  const auto& slack_rule = std::get<HDStrategy>(slack_back);
  CHECK(slack_rule.kind() == HDStrategy::Kind::kMinSlack);
  for (std::size_t step : {0, 1, 7}) {
    CHECK(slack_rule.choose(g, 0, step) == slack.choose(g, 0, step));
  }

  Game maxg;
  maxg.add_vertex("v", Owner::kMax, 0.0);
  maxg.add_vertex("a", Owner::kChance, 1.0);
  maxg.add_vertex("t", Owner::kChance, 0.0);
  maxg.add_edge("v", "a");
  maxg.add_edge("v", "t");
  maxg.add_edge("a", "t", 1.0);
  maxg.add_edge("t", "t", 1.0);
  HDStrategy countdown = max_eps_hd(maxg, 0.5);
  Strategy countdown_back = load_strategy(maxg, save_strategy(maxg, countdown));
  const auto& cd = std::get<HDStrategy>(countdown_back);
  CHECK(cd.kind() == HDStrategy::Kind::kMaxCountdown);
  for (std::size_t step : {0, 1, 2, 9}) {
    CHECK(cd.choose(maxg, 0, step) == countdown.choose(maxg, 0, step));
  }
}

TEST_CASE("require_covering rejects broken strategies") {
  Game g = min_fork(1.0, 2.0, 3.0);
  MDStrategy missing;
  missing.player = Owner::kMin;
  CHECK_THROWS_AS(require_covering(g, missing), StrategyError);
  MDStrategy wrong;
  wrong.player = Owner::kMin;
  wrong.choices["u"] = "t";  // not a successor of u
  CHECK_THROWS_AS(require_covering(g, wrong), StrategyError);
  MDStrategy extra;
  extra.player = Owner::kMin;
  extra.choices["u"] = "a";
  extra.choices["a"] = "t";  // not owned by min
  CHECK_THROWS_AS(require_covering(g, extra), StrategyError);
}
