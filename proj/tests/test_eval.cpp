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
#include "tgsolve/eval.hpp"
#include "tgsolve/transforms.hpp"

using namespace tgs;

namespace {

MDStrategy empty_max() {
  MDStrategy s;
  s.player = Owner::kMax;
  return s;
}

MDStrategy empty_min() {
  MDStrategy s;
  s.player = Owner::kMin;
  return s;
}

// Strategy adjusted to a reach_to_acc output: target player vertices have a
// single successor (the sink).
MDStrategy adapt_to_acc(const MDStrategy& md, const Game& acc_game,
                        const TargetSet& targets, const std::string& sink) {
  MDStrategy out = md;
  for (const std::string& t : targets) {
    if (out.choices.count(t)) out.choices[t] = sink;
  }
  (void)acc_game;
  return out;
}

}  // namespace

TEST_CASE("evaluate_md_pair basics") {
  SUBCASE("zero rewards evaluate to zero") {
    std::mt19937_64 rng(41);
    test::RandomGameOptions opts;
    opts.rewards = {0.0};
    Game g = test::random_game(rng, opts);
    MDStrategy sigma = test::random_md(rng, g, Owner::kMax);
    MDStrategy pi = test::random_md(rng, g, Owner::kMin);
    EvalResult r = evaluate_md_pair(g, sigma, pi, 0u);
    CHECK(r.value == ExtValue(0.0));
    CHECK(r.finite_certified);
  }
  SUBCASE("reward chain") {
    Game g = test::chain_game(1.0);
    EvalResult r = evaluate_md_pair(g, empty_max(), empty_min(), 0u);
    CHECK(r.value == ExtValue(1.0));
    CHECK(r.finite_certified);
    CHECK(r.method == "linear-solve");
  }
  SUBCASE("geometric visit count") {
    // v pays 1 per visit and stays with probability 1/2: expected visits 2.
    Game g;
    g.add_vertex("v", Owner::kChance, 1.0);
    g.add_vertex("t", Owner::kChance, 0.0);
    g.add_edge("v", "v", 0.5);
    g.add_edge("v", "t", 0.5);
    g.add_edge("t", "t", 1.0);
    // Series oracle: sum over k >= 0 of (1/2)^k telescopes to 2.
    double series = 0.0;
    for (int k = 0; k < 200; ++k) series += std::ldexp(1.0, -k);
    EvalResult r = evaluate_md_pair(g, empty_max(), empty_min(), 0u);
    CHECK(r.value.raw() == doctest::Approx(series).epsilon(1e-12));
    CHECK(r.value.raw() == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("infinite expectation is certified structurally") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 10; ++round) {
    Game g = test::pump_game(rng);
    MDStrategy sigma = test::random_md(rng, g, Owner::kMax);
    MDStrategy pi = test::random_md(rng, g, Owner::kMin);
    EvalResult r = evaluate_md_pair(g, sigma, pi, 0u);
    CHECK(r.value.is_infinite());
    CHECK(!r.finite_certified);
    CHECK(r.method == "infinite-certificate");
  }
}

TEST_CASE("evaluate_reach basics") {
  SUBCASE("start inside the target set") {
    Game g = test::chain_game(0.0);
    CHECK(evaluate_reach(g, empty_max(), empty_min(), 0u, {"v"}) == 1.0);
  }
  SUBCASE("fair coin") {
    Game g;
    g.add_vertex("c", Owner::kChance, 0.0);
    g.add_vertex("win", Owner::kChance, 0.0);
    g.add_vertex("lose", Owner::kChance, 0.0);
    g.add_edge("c", "win", 0.5);
    g.add_edge("c", "lose", 0.5);
    g.add_edge("win", "win", 1.0);
    g.add_edge("lose", "lose", 1.0);
    CHECK(evaluate_reach(g, empty_max(), empty_min(), 0u, {"win"}) ==
          doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("unknown target id is an error") {
    Game g = test::chain_game(0.0);
    CHECK_THROWS_AS(evaluate_reach(g, empty_max(), empty_min(), 0u, {"nope"}),
                    std::invalid_argument);
  }
}

TEST_CASE("reach equals total reward through the reduction") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 30; ++round) {
    Game g = test::random_game(rng);
    MDStrategy sigma = test::random_md(rng, g, Owner::kMax);
    MDStrategy pi = test::random_md(rng, g, Owner::kMin);
    std::uniform_int_distribution<std::uint32_t> pick(
        0, static_cast<std::uint32_t>(g.size() - 1));
    TargetSet targets = {g.id(pick(rng))};
    if (round % 3 == 0) targets.insert(g.id(pick(rng)));

    ReachToAcc reduced = reach_to_acc(g, targets);
    MDStrategy sigma2 = adapt_to_acc(sigma, reduced.game, targets, reduced.sink_id);
    MDStrategy pi2 = adapt_to_acc(pi, reduced.game, targets, reduced.sink_id);
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      double reach = evaluate_reach(g, sigma, pi, v, targets);
      EvalResult acc = evaluate_md_pair(reduced.game, sigma2, pi2, v);
      REQUIRE(acc.finite_certified);
      CHECK(std::abs(reach - acc.value.raw()) < 1e-9);
    }
  }
}

TEST_CASE("best responses") {
  SUBCASE("no opposing vertices reduces to plain evaluation") {
    Game g = test::chain_game(1.0);
    SolveReport r = best_response_min(g, empty_max());
    CHECK(r.values[0] == ExtValue(1.0));
  }
  SUBCASE("Min best response picks the cheaper chain") {
    Game g;
    g.add_vertex("u", Owner::kMin, 0.0);
    g.add_vertex("a", Owner::kChance, 1.0);
    g.add_vertex("b", Owner::kChance, 3.0);
    g.add_vertex("t", Owner::kChance, 0.0);
    g.add_edge("u", "a");
    g.add_edge("u", "b");
    g.add_edge("a", "t", 1.0);
    g.add_edge("b", "t", 1.0);
    g.add_edge("t", "t", 1.0);
    CHECK(best_response_min(g, empty_max()).values[0] == ExtValue(1.0));
    CHECK(best_response_max(g, min_md_optimal(g, value_iterate(g).values))
              .values[0] == ExtValue(1.0));
  }
  SUBCASE("dual: Max best response picks the richer chain") {
    Game g;
    g.add_vertex("v", Owner::kMax, 0.0);
    g.add_vertex("a", Owner::kChance, 1.0);
    g.add_vertex("b", Owner::kChance, 3.0);
    g.add_vertex("t", Owner::kChance, 0.0);
    g.add_edge("v", "a");
    g.add_edge("v", "b");
    g.add_edge("a", "t", 1.0);
    g.add_edge("b", "t", 1.0);
    g.add_edge("t", "t", 1.0);
    CHECK(best_response_max(g, empty_min()).values[0] == ExtValue(3.0));
  }
  SUBCASE("no Max strategy beats the solve values") {
    std::mt19937_64 rng(44);
    test::RandomGameOptions opts;
    opts.min_vertices = 4;
    opts.max_vertices = 6;
    opts.max_player_vertices = 5;
    for (int round = 0; round < 8; ++round) {
      Game g = test::random_finite_game(rng, opts);
      SolveReport solve = value_iterate(g);
      // Exhaustive sigma enumeration via the exhaustive helper's witnesses
      // is overkill here; sample random strategies instead.
      for (int i = 0; i < 10; ++i) {
        MDStrategy sigma = test::random_md(rng, g, Owner::kMax);
        SolveReport response = best_response_min(g, sigma);
        for (std::uint32_t v = 0; v < g.size(); ++v) {
          CHECK(response.values[v].raw() <=
                solve.values[v].raw() + 1e-7);
        }
      }
    }
  }
}

TEST_CASE("exhaustive_md_values") {
  SUBCASE("single binary choice") {
    Game g;
    g.add_vertex("v", Owner::kMax, 0.0);
    g.add_vertex("a", Owner::kChance, 1.0);
    g.add_vertex("b", Owner::kChance, 2.0);
    g.add_vertex("t", Owner::kChance, 0.0);
    g.add_edge("v", "a");
    g.add_edge("v", "b");
    g.add_edge("a", "t", 1.0);
    g.add_edge("b", "t", 1.0);
    g.add_edge("t", "t", 1.0);
    ExhaustiveResult r = exhaustive_md_values(g, 0);
    CHECK(r.sup_inf == ExtValue(2.0));
    CHECK(r.inf_sup == ExtValue(2.0));
    CHECK(r.max_witness.choices.at("v") == "b");
  }
  SUBCASE("weak duality and coincidence with the fixed point") {
    std::mt19937_64 rng(45);
    test::RandomGameOptions opts;
    opts.max_vertices = 9;
    opts.max_player_vertices = 6;
    for (int round = 0; round < 10; ++round) {
      Game g = test::random_finite_game(rng, opts);
      SolveReport solve = value_iterate(g);
      ExhaustiveResult r = exhaustive_md_values(g, 0);
      for (std::uint32_t v = 0; v < g.size(); ++v) {
        CHECK(r.sup_inf_all[v] <= oplus(r.inf_sup_all[v], 1e-10));
        CHECK(std::abs(r.sup_inf_all[v].raw() - solve.values[v].raw()) <
              1e-7);
        CHECK(std::abs(r.inf_sup_all[v].raw() - solve.values[v].raw()) <
              1e-7);
      }
    }
  }
  SUBCASE("the witnesses achieve their bounds") {
    std::mt19937_64 rng(46);
    Game g = test::random_finite_game(rng);
    ExhaustiveResult r = exhaustive_md_values(g, 0);
    SolveReport against_max = best_response_min(g, r.max_witness);
    CHECK(against_max.values[0].raw() >= r.sup_inf.raw() - 1e-7);
    SolveReport against_min = best_response_max(g, r.min_witness);
    CHECK(against_min.values[0].raw() <= r.inf_sup.raw() + 1e-7);
  }
  SUBCASE("cap exceeded") {
    std::mt19937_64 rng(47);
    test::RandomGameOptions opts;
    opts.min_vertices = 12;
    opts.max_vertices = 12;
    Game g = test::random_game(rng, opts);
    CHECK_THROWS_AS(exhaustive_md_values(g, 0, std::nullopt, 2),
                    std::invalid_argument);
  }
  SUBCASE("reach objective") {
    Game g;
    g.add_vertex("v", Owner::kMax, 0.0);
    g.add_vertex("c", Owner::kChance, 0.0);
    g.add_vertex("win", Owner::kChance, 0.0);
    g.add_vertex("lose", Owner::kChance, 0.0);
    g.add_edge("v", "c");
    g.add_edge("v", "lose");
    g.add_edge("c", "win", 0.5);
    g.add_edge("c", "lose", 0.5);
    g.add_edge("win", "win", 1.0);
    g.add_edge("lose", "lose", 1.0);
    ExhaustiveResult r =
        exhaustive_md_values(g, 0, TargetSet{"win"});
    CHECK(r.sup_inf == ExtValue(0.5));
    CHECK(r.max_witness.choices.at("v") == "c");
  }
}

TEST_CASE("linear solve and iterative evaluation agree") {
  std::mt19937_64 rng(48);
  EvalOptions iterative;
  iterative.direct_solve_limit = 0;  // force the fallback
  int used_fallback = 0;
  for (int round = 0; round < 20; ++round) {
    Game g = test::random_game(rng);
    MDStrategy sigma = test::random_md(rng, g, Owner::kMax);
    MDStrategy pi = test::random_md(rng, g, Owner::kMin);
    EvalResult direct = evaluate_md_pair(g, sigma, pi, 0u);
    EvalResult iter = evaluate_md_pair(g, sigma, pi, 0u, iterative);
    if (direct.value.is_infinite()) {
      CHECK(iter.value.is_infinite());
      continue;
    }
    // "iterative" unless there was no transient system to solve at all.
    if (iter.method == "iterative") ++used_fallback;
    CHECK(std::abs(direct.value.raw() - iter.value.raw()) <=
          1e-8 * std::max(1.0, direct.value.raw()));
  }
  CHECK(used_fallback >= 5);
}

TEST_CASE("MR pairs evaluate through the merged chain") {
  // One randomizing Max vertex over two chains of known value.
  Game g;
  g.add_vertex("v", Owner::kMax, 0.0);
  g.add_vertex("a", Owner::kChance, 1.0);
  g.add_vertex("b", Owner::kChance, 3.0);
  g.add_vertex("t", Owner::kChance, 0.0);
  g.add_edge("v", "a");
  g.add_edge("v", "b");
  g.add_edge("a", "t", 1.0);
  g.add_edge("b", "t", 1.0);
  g.add_edge("t", "t", 1.0);
  MRStrategy sigma = mr_from_weights(g, "v", {1.0, 3.0});
  MRStrategy pi;
  pi.player = Owner::kMin;
  EvalResult r = evaluate_pair(g, sigma, pi, 0);
  CHECK(r.value.raw() == doctest::Approx(0.25 * 1 + 0.75 * 3).epsilon(1e-12));
}
