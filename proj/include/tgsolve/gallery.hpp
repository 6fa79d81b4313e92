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

#ifndef TGSOLVE_GALLERY_HPP_
#define TGSOLVE_GALLERY_HPP_

#include <cstdint>
#include <string>
#include <utility>

#include "tgsolve/game.hpp"
#include "tgsolve/strategy.hpp"

namespace tgs {

// Finite truncations of the counterexample families. Truncation N
// materializes columns (or branches) 0..N; claims about the infinite
// originals are asserted as trends over growing N, never as values of a
// single finite game.

// Spiral reach game "fig1": a bottom row of Max vertices walking right with
// an upward exit per column, two coin-flip rows draining left (to the losing
// absorber s, resp. the target t), a Min hub u choosing the escape column,
// and a wrap-around through p back to v. All rewards 0; the objective is
// reaching t. Max exiting at column j gives the losing drain probability
// p_s = 2^-j (1 at j = 0); Min escaping at column k gives the winning drain
// probability p_t = 2^-k (1 at k = 0).
struct Fig1 {
  Game game;
  std::string v = "v";
  std::string s = "s";
  std::string u = "u";
  std::string t = "t";
  std::string p = "p";
  TargetSet targets;  // {t}
};
Fig1 build_fig1(std::uint32_t n);

// Exact reach-t probability from v when Max always exits at column j and
// Min always escapes at column k: the two-absorber loop solution
// (1-p_s)*p_t / (p_s + p_t - p_s*p_t).
double fig1_md_value(std::uint32_t j, std::uint32_t k);

// Column strategies for the fig1 family: Max walks right and exits up at
// column j (the forced exit at column N caps j); Min escapes at column k.
MDStrategy fig1_max_column(const Game& game, std::uint32_t j);
MDStrategy fig1_min_column(const Game& game, std::uint32_t k);

// "fig1-nomax": the Min hub collapses into an absorbing target, leaving a
// pure maximization game whose value 1 - 2^-N creeps toward 1 while every
// fixed column stays short of it.
struct Fig1NoMax {
  Game game;
  std::string v = "v";
  std::string uprime = "uprime";
  TargetSet targets;  // {uprime}
};
Fig1NoMax build_fig1_no_max_optimal(std::uint32_t n);

// "fig1-nomin": the single-pass minimization half. Min escapes once from u;
// a failed pass drains into the absorbing sink p. Val(u) = 2^-N exactly,
// decreasing toward 0, while every fixed column k keeps value 2^-k > 0.
struct Fig1NoMin {
  Game game;
  std::string u = "u";
  std::string t = "t";
  TargetSet targets;  // {t}
};
Fig1NoMin build_fig1_no_min_optimal(std::uint32_t n);

// "fig2": one Max choice among branches q_1..q_N with rewards 2^n. Every
// deterministic choice is worth exactly 2^n, while the geometric mixture
// (weights 2^-n) is worth N / (1 - 2^-N), unbounded in N.
struct Fig2 {
  Game game;
  std::string v = "v";
};
Fig2 build_fig2(std::uint32_t n);

// Restricted-column optimal values over the fig1 closed form: one side is
// capped at max_j (resp. max_k) columns while the other ranges over 0..N.
struct RestrictedValues {
  double sup_inf = 0.0;  // Max capped at max_j, Min free up to N
  double inf_sup = 0.0;  // Min capped at max_k, Max free up to N
};
RestrictedValues fig1_restricted_values(std::uint32_t n, std::uint32_t max_j,
                                        std::uint32_t max_k);

}  // namespace tgs

#endif  // TGSOLVE_GALLERY_HPP_
