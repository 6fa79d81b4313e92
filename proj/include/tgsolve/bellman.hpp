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

#ifndef TGSOLVE_BELLMAN_HPP_
#define TGSOLVE_BELLMAN_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "tgsolve/game.hpp"
#include "tgsolve/kernels.hpp"
#include "tgsolve/value_vector.hpp"

namespace tgs {

// Result of an undiscounted least-fixed-point solve. Values at vertices not
// listed in `divergent` are monotone lower bounds on the optimal expected
// total reward; once the residual drops below tol they satisfy the fixed
// point equation to within tol, but there is no global error certificate for
// the undiscounted case. Vertices in `divergent` exceeded the divergence
// bound and are presented as infinite -- that flag is a heuristic ("exceeded
// bound"), not a certificate.
struct SolveReport {
  ValueVector values;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::vector<std::uint32_t> divergent;
  bool converged = false;
};

struct SolveOptions {
  double tol = 1e-9;
  std::size_t max_iter = 100000;
  double divergence_bound = 1e12;
  Kernel kernel = Kernel::kAuto;
};

// One application of the one-step value operator (see kernels.hpp).
ValueVector apply_L(const Game& game, const ValueVector& x,
                    Kernel kernel = Kernel::kAuto);

// Kleene iteration from the zero vector. Stops when the max per-vertex
// increase drops below tol, or after max_iter sweeps. Vertices whose iterate
// exceeds divergence_bound are flagged (sticky) and reported as infinite.
// converged implies the residual test passed and nothing was flagged.
SolveReport value_iterate(const Game& game, const SolveOptions& opts = {});

// Optimal value of the reward accumulated over the first n transitions
// (n + 1 visited vertices), i.e. n + 1 applications of the operator to 0.
ValueVector nstep_values(const Game& game, std::size_t n,
                         Kernel kernel = Kernel::kAuto);

struct DiscountedResult {
  ValueVector values;
  double error_bound = 0.0;  // sup-norm distance to the discounted fixed point
  std::size_t iterations = 0;
};

// Discounted value iteration. Requires lambda in (0,1) and rewards <= 1
// (run normalize_rewards first for larger rewards). The discounted operator
// is a lambda-contraction, so stopping at residual < tol*(1-lambda)/lambda
// certifies a sup-norm error of at most tol; the actual bound achieved is
// reported. All values are finite and bounded by 1/(1-lambda).
DiscountedResult discounted_iterate(const Game& game, double lambda,
                                    double tol, Kernel kernel = Kernel::kAuto);

// Least l with lambda^l / (1-lambda) * max_reward < eps/8, the horizon after
// which the discounted tail is negligible. Returns 0 when max_reward == 0.
std::size_t horizon_for_eps(double lambda, double max_reward, double eps);

struct LambdaChoice {
  double lambda = 0.0;
  std::size_t n_used = 0;
};

// Picks a discount factor close enough to 1 that the discounted objective
// eps/4-dominates the n-step objective at vertex v, where n is the least
// horizon (searched with a strict test, n >= 1) whose n-step value reaches
// the solve value minus eps/4 -- or 1/eps when v is flagged divergent. A
// target that clamps to zero needs no lookahead: n = 0 and the first
// schedule entry are returned. The schedule defaults to lambda_i = 1 - 2^-i;
// a finite schedule with no admissible entry (or an unreachable 1/eps
// target) raises ScheduleExhausted.
LambdaChoice choose_lambda(const Game& game, std::uint32_t v, double eps,
                           std::span<const double> schedule = {},
                           const SolveOptions& opts = {});

// Internal building block shared with the strategy syntheses: per-vertex
// first horizon n (strict test as above, n=0 when target <= 0) whose n-step
// value exceeds targets[v]; returns the max over all vertices. targets uses
// raw doubles; entries <= 0 are trivially satisfied.
std::size_t horizon_reaching_targets(const Game& game,
                                     std::span<const double> targets,
                                     std::size_t cap,
                                     Kernel kernel = Kernel::kAuto);

// First schedule entry admissible for horizon n: lambda^n >= 1 -
// eps/(4*(n+1)*max(max_reward,1)). Empty schedule means the default
// lambda_i = 1 - 2^-i sequence.
double first_admissible_lambda(std::size_t n, double eps, double max_reward,
                               std::span<const double> schedule);

}  // namespace tgs

#endif  // TGSOLVE_BELLMAN_HPP_
