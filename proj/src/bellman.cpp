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

#include "tgsolve/bellman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tgsolve/errors.hpp"

namespace tgs {

ValueVector apply_L(const Game& game, const ValueVector& x, Kernel kernel) {
  if (x.size() != game.size()) {
    throw std::invalid_argument("apply_L: vector size does not match game");
  }
  PackedGame pg = pack(game);
  ValueVector y(game.size());
  sweep_fn(kernel)(pg, x.raw().data(), y.raw().data(), 1.0);
  return y;
}

SolveReport value_iterate(const Game& game, const SolveOptions& opts) {
  require_valid(game);
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (!(opts.divergence_bound > 0.0)) {
    throw std::invalid_argument("divergence_bound must be > 0");
  }
  const std::size_t n = game.size();
  PackedGame pg = pack(game);
  SweepFn sweep = sweep_fn(opts.kernel);

  std::vector<double> x(n, 0.0), y(n, 0.0);
  std::vector<char> flagged(n, 0);
  SolveReport report;
  for (std::size_t iter = 1; iter <= opts.max_iter; ++iter) {
    sweep(pg, x.data(), y.data(), 1.0);
    double residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      residual = std::max(residual, y[v] - x[v]);
      if (y[v] > opts.divergence_bound) flagged[v] = 1;
    }
    x.swap(y);
    report.iterations = iter;
    report.residual = residual;
    if (residual < opts.tol) break;
  }

  for (std::uint32_t v = 0; v < n; ++v) {
    if (flagged[v]) {
      report.divergent.push_back(v);
      x[v] = std::numeric_limits<double>::infinity();
    }
  }
  report.converged = report.residual < opts.tol && report.divergent.empty();
  report.values = ValueVector::wrap(std::move(x));
  return report;
}

ValueVector nstep_values(const Game& game, std::size_t n, Kernel kernel) {
  require_valid(game);
  PackedGame pg = pack(game);
  SweepFn sweep = sweep_fn(kernel);
  std::vector<double> x(game.size(), 0.0), y(game.size(), 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    sweep(pg, x.data(), y.data(), 1.0);
    x.swap(y);
  }
  return ValueVector::wrap(std::move(x));
}

DiscountedResult discounted_iterate(const Game& game, double lambda,
                                    double tol, Kernel kernel) {
  require_valid(game);
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw std::invalid_argument("lambda must lie in (0,1)");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (game.max_reward() > 1.0) {
    throw std::invalid_argument(
        "discounted_iterate requires rewards <= 1 (normalize first)");
  }
  const std::size_t n = game.size();
  PackedGame pg = pack(game);
  SweepFn sweep = sweep_fn(kernel);

  // Residual threshold certifying sup-norm error <= tol for a
  // lambda-contraction.
  const double threshold = tol * (1.0 - lambda) / lambda;
  // From x0 = 0, successive residuals decay like lambda^k, so the loop is
  // finite; the cap below is a generous multiple of that bound.
  std::size_t cap = 64;
  {
    double need = std::log(std::max(threshold, 1e-300)) / std::log(lambda);
    if (need > 0) cap += static_cast<std::size_t>(need) * 2;
  }

  std::vector<double> x(n, 0.0), y(n, 0.0);
  DiscountedResult result;
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 1; iter <= cap; ++iter) {
    sweep(pg, x.data(), y.data(), lambda);
    residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      residual = std::max(residual, std::abs(y[v] - x[v]));
    }
    x.swap(y);
    result.iterations = iter;
    if (residual < threshold) break;
  }
  if (!(residual < threshold)) {
    throw EvalError("discounted iteration failed to contract");
  }
  result.error_bound = residual * lambda / (1.0 - lambda);
  result.values = ValueVector::wrap(std::move(x));
  return result;
}

std::size_t horizon_for_eps(double lambda, double max_reward, double eps) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw std::invalid_argument("lambda must lie in (0,1)");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (max_reward < 0.0) throw std::invalid_argument("max_reward must be >= 0");
  const double bound = eps / 8.0;
  std::size_t ell = 0;
  double pow_l = 1.0;
  while (!(pow_l / (1.0 - lambda) * max_reward < bound)) {
    ++ell;
    pow_l *= lambda;
    if (pow_l == 0.0) break;  // underflow: condition now holds
  }
  return ell;
}

std::size_t horizon_reaching_targets(const Game& game,
                                     std::span<const double> targets,
                                     std::size_t cap, Kernel kernel) {
  const std::size_t n = game.size();
  if (targets.size() != n) {
    throw std::invalid_argument("targets size does not match game");
  }
  std::size_t pending = 0;
  for (double t : targets) {
    if (t > 0.0) ++pending;
  }
  if (pending == 0) return 0;

  PackedGame pg = pack(game);
  SweepFn sweep = sweep_fn(kernel);
  std::vector<double> x(n, 0.0), y(n, 0.0);
  std::vector<char> done(n, 0);
  std::size_t best = 0;
  // x holds L^m(0) after m sweeps; the m-th sweep decides horizon n = m-1.
  sweep(pg, x.data(), y.data(), 1.0);
  x.swap(y);
  for (std::size_t m = 2; m <= cap + 1; ++m) {
    sweep(pg, x.data(), y.data(), 1.0);
    x.swap(y);
    std::size_t horizon = m - 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && targets[v] > 0.0 && x[v] > targets[v]) {
        done[v] = 1;
        best = std::max(best, horizon);
        --pending;
      }
    }
    if (pending == 0) return best;
  }
  throw ScheduleExhausted(
      "n-step values do not reach the requested target within the horizon cap");
}

double first_admissible_lambda(std::size_t n, double eps, double max_reward,
                               std::span<const double> schedule) {
  const double denom = 4.0 * static_cast<double>(n + 1) * std::max(max_reward, 1.0);
  const double need = 1.0 - eps / denom;
  if (schedule.empty()) {
    for (int i = 1; i <= 62; ++i) {
      double lambda = 1.0 - std::ldexp(1.0, -i);
      if (std::pow(lambda, static_cast<double>(n)) >= need) return lambda;
    }
    throw ScheduleExhausted("no default discount factor admissible");
  }
  for (double lambda : schedule) {
    if (!(lambda > 0.0) || !(lambda < 1.0)) {
      throw std::invalid_argument("schedule entries must lie in (0,1)");
    }
    if (std::pow(lambda, static_cast<double>(n)) >= need) return lambda;
  }
  throw ScheduleExhausted("no schedule entry admissible for the horizon");
}

LambdaChoice choose_lambda(const Game& game, std::uint32_t v, double eps,
                           std::span<const double> schedule,
                           const SolveOptions& opts) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite and > 0");
  }
  if (v >= game.size()) throw std::invalid_argument("vertex out of range");

  SolveReport solve = value_iterate(game, opts);
  const bool divergent =
      std::find(solve.divergent.begin(), solve.divergent.end(), v) !=
      solve.divergent.end();

  double target;
  std::size_t cap;
  if (divergent) {
    target = 1.0 / eps;
    cap = 10 * opts.max_iter;
  } else {
    target = solve.values[v].raw() - eps / 4.0;
    cap = solve.iterations + opts.max_iter + 2;
  }
  if (target <= 0.0) {
    return {first_admissible_lambda(0, eps, game.max_reward(), schedule), 0};
  }

  std::vector<double> targets(game.size(), 0.0);
  targets[v] = target;
  std::size_t n;
  try {
    n = horizon_reaching_targets(game, targets, cap, opts.kernel);
  } catch (const ScheduleExhausted&) {
    throw ScheduleExhausted(
        "eps-approximation target at " + game.id(v) +
        " is unreachable by finite-horizon values (divergence flag may be a "
        "false positive)");
  }
  return {first_admissible_lambda(n, eps, game.max_reward(), schedule), n};
}

}  // namespace tgs
