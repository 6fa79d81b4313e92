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

#ifndef TGSOLVE_EVAL_HPP_
#define TGSOLVE_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "tgsolve/bellman.hpp"
#include "tgsolve/game.hpp"
#include "tgsolve/strategy.hpp"

namespace tgs {

// Exact evaluation outcome for a strategy pair. The value is infinite
// exactly when the certificate fired (a positive-reward vertex sits in a
// recurrent class reachable from the start vertex), in which case
// finite_certified is false and method is "infinite-certificate".
struct EvalResult {
  ExtValue value;
  bool finite_certified = false;
  std::string method;  // "linear-solve" | "iterative" | "infinite-certificate"
};

struct EvalOptions {
  // Transient systems larger than this fall back to iterative evaluation.
  std::size_t direct_solve_limit = 2000;
  double iterative_tol = 1e-12;
  std::size_t iterative_cap = 10000000;
};

// Expected total reward of the Markov chain induced by a memoryless pair,
// from vertex v. Infinity is decided structurally (recurrent-class
// analysis); finite systems are solved by Gaussian elimination with partial
// pivoting, falling back to fixed-point iteration above the size limit.
// A singular system outside the certified-infinite case is reported as an
// EvalError, never silently approximated.
EvalResult evaluate_md_pair(const Game& game, const MDStrategy& sigma,
                            const MDStrategy& pi, std::uint32_t v,
                            const EvalOptions& opts = {});
EvalResult evaluate_md_pair(const Game& game, const MDStrategy& sigma,
                            const MDStrategy& pi, const std::string& v,
                            const EvalOptions& opts = {});

// Same evaluation for randomized memoryless strategies (merged-probability
// chain construction).
EvalResult evaluate_pair(const Game& game, const MRStrategy& sigma,
                         const MRStrategy& pi, std::uint32_t v,
                         const EvalOptions& opts = {});

// Probability of visiting a target vertex from v in the induced chain.
double evaluate_reach(const Game& game, const MDStrategy& sigma,
                      const MDStrategy& pi, std::uint32_t v,
                      const TargetSet& targets, const EvalOptions& opts = {});
double evaluate_reach(const Game& game, const MDStrategy& sigma,
                      const MDStrategy& pi, const std::string& v,
                      const TargetSet& targets, const EvalOptions& opts = {});

// Optimal counter-strategy values when one side is fixed: fixing Max's
// choices leaves a minimizing decision process solved by value iteration
// (and dually for Min).
SolveReport best_response_min(const Game& game, const MDStrategy& sigma,
                              const SolveOptions& opts = {});
SolveReport best_response_max(const Game& game, const MDStrategy& pi,
                              const SolveOptions& opts = {});

// Enumerates all memoryless deterministic pairs (product of successor
// counts over player vertices must stay within `cap`) and evaluates each
// pair exactly. sup_inf/inf_sup are reported at vertex v and pointwise over
// all vertices; max_witness attains sup_inf at v, min_witness attains
// inf_sup at v (first in lexicographic successor order). With a target set
// the payoff is the reach probability instead of total reward.
struct ExhaustiveResult {
  ExtValue sup_inf;
  ExtValue inf_sup;
  ValueVector sup_inf_all;
  ValueVector inf_sup_all;
  MDStrategy max_witness;
  MDStrategy min_witness;
};
ExhaustiveResult exhaustive_md_values(
    const Game& game, std::uint32_t v,
    const std::optional<TargetSet>& targets = std::nullopt,
    std::uint64_t cap = 1000000, const EvalOptions& opts = {});

}  // namespace tgs

#endif  // TGSOLVE_EVAL_HPP_
