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

#include "tgsolve/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tgsolve/bellman.hpp"
#include "tgsolve/errors.hpp"
#include "tgsolve/transforms.hpp"

namespace tgs {

namespace {

constexpr std::uint32_t kUnowned = std::numeric_limits<std::uint32_t>::max();

// eps/2^(m+1), flushing to zero for very deep histories.
double step_slack(double eps, std::size_t m) {
  int e = m + 1 > 1060 ? 1060 : static_cast<int>(m + 1);
  return std::ldexp(eps, -e);
}

}  // namespace

void require_covering(const Game& game, const MDStrategy& md) {
  std::size_t owned = 0;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    if (game.owner(v) != static_cast<Owner>(md.player)) continue;
    ++owned;
    auto it = md.choices.find(game.id(v));
    if (it == md.choices.end()) {
      throw StrategyError("no choice at vertex " + game.id(v));
    }
    auto target = game.find(it->second);
    if (!target) {
      throw StrategyError("choice at " + game.id(v) +
                          " names unknown vertex " + it->second);
    }
    auto succ = game.successors(v);
    if (std::find(succ.begin(), succ.end(), *target) == succ.end()) {
      throw StrategyError("choice " + it->second + " is not a successor of " +
                          game.id(v));
    }
  }
  if (owned != md.choices.size()) {
    throw StrategyError("strategy has entries for vertices it does not own");
  }
}

void require_covering(const Game& game, const MRStrategy& mr) {
  std::size_t owned = 0;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    if (game.owner(v) != mr.player) continue;
    ++owned;
    auto it = mr.probs.find(game.id(v));
    if (it == mr.probs.end()) {
      throw StrategyError("no distribution at vertex " + game.id(v));
    }
    const auto& p = it->second;
    if (p.size() != game.successors(v).size()) {
      throw StrategyError("distribution at " + game.id(v) +
                          " does not align with the successor list");
    }
    double sum = 0.0;
    for (double x : p) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw StrategyError("negative probability at " + game.id(v));
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw StrategyError("probabilities at " + game.id(v) +
                          " do not sum to 1");
    }
  }
  if (owned != mr.probs.size()) {
    throw StrategyError("strategy has entries for vertices it does not own");
  }
}

std::vector<std::uint32_t> index_choices(const Game& game,
                                         const MDStrategy& md) {
  require_covering(game, md);
  std::vector<std::uint32_t> out(game.size(), kUnowned);
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    if (game.owner(v) != md.player) continue;
    out[v] = game.index_of(md.choices.at(game.id(v)));
  }
  return out;
}

// --- HDStrategy ---------------------------------------------------------

HDStrategy HDStrategy::wrap(MDStrategy md) {
  HDStrategy s;
  s.kind_ = Kind::kWrappedMd;
  s.player_ = md.player;
  s.md_ = std::move(md);
  return s;
}

HDStrategy HDStrategy::min_slack(ValueVector values, double eps) {
  HDStrategy s;
  s.kind_ = Kind::kMinSlack;
  s.player_ = Owner::kMin;
  s.values_ = std::move(values);
  s.eps_ = eps;
  return s;
}

HDStrategy HDStrategy::max_countdown(std::vector<ValueVector> tables,
                                     double eps, MDStrategy tail) {
  HDStrategy s;
  s.kind_ = Kind::kMaxCountdown;
  s.player_ = Owner::kMax;
  s.tables_ = std::move(tables);
  s.eps_ = eps;
  s.md_ = std::move(tail);
  return s;
}

std::uint32_t HDStrategy::choose(const Game& game, std::uint32_t vertex,
                                 std::size_t step) const {
  auto succ = game.successors(vertex);
  if (succ.empty()) throw StrategyError("vertex has no successor");
  switch (kind_) {
    case Kind::kWrappedMd: {
      auto it = md_.choices.find(game.id(vertex));
      if (it == md_.choices.end()) {
        throw StrategyError("no choice at vertex " + game.id(vertex));
      }
      return game.index_of(it->second);
    }
    case Kind::kMinSlack: {
      if (values_.size() != game.size()) {
        throw StrategyError("rule values do not match the game");
      }
      const double r = game.reward(vertex);
      const double bound = values_[vertex].raw() + step_slack(eps_, step);
      std::uint32_t argmin = succ[0];
      double best = values_[succ[0]].raw();
      for (std::uint32_t u : succ) {
        double val = values_[u].raw();
        if (r + val <= bound) return u;
        if (val < best) {
          best = val;
          argmin = u;
        }
      }
      // `values_` is only a tol-approximate fixed point; once the slack
      // underflows below the solver residual the strict test can fail from
      // rounding alone. The exact argmin is the 0-slack choice.
      if (r + best <= values_[vertex].raw() + step_slack(eps_, step) + 1e-7) {
        return argmin;
      }
      throw Error("slack rule inconsistency at " + game.id(vertex) +
                  ": values are not a fixed point");
    }
    case Kind::kMaxCountdown: {
      const std::size_t n = tables_.size() - 1;
      if (step > n) {
        auto it = md_.choices.find(game.id(vertex));
        if (it == md_.choices.end()) {
          throw StrategyError("no tail choice at vertex " + game.id(vertex));
        }
        return game.index_of(it->second);
      }
      const std::size_t k = n - step;
      const ValueVector& cur = tables_[k];
      const ValueVector* prev = k >= 1 ? &tables_[k - 1] : nullptr;
      if (cur.size() != game.size()) {
        throw StrategyError("rule tables do not match the game");
      }
      const double r = game.reward(vertex);
      double threshold = cur[vertex].raw() - step_slack(eps_, step);
      if (threshold < 0.0) threshold = 0.0;
      std::uint32_t argmax = succ[0];
      double best = -1.0;
      for (std::uint32_t u : succ) {
        double val = prev ? (*prev)[u].raw() : 0.0;
        if (r + val >= threshold) return u;
        if (val > best) {
          best = val;
          argmax = u;
        }
      }
      return argmax;  // unreachable for tables built from this game
    }
  }
  throw std::logic_error("unknown rule kind");
}

std::string HDStrategy::choose_id(const Game& game, const std::string& vertex,
                                  std::size_t step) const {
  return game.id(choose(game, game.index_of(vertex), step));
}

// --- Syntheses ----------------------------------------------------------

MDStrategy min_md_optimal(const Game& game, const ValueVector& values) {
  if (values.size() != game.size()) {
    throw std::invalid_argument("values size does not match game");
  }
  MDStrategy out;
  out.player = Owner::kMin;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    if (game.owner(v) != Owner::kMin) continue;
    auto succ = game.successors(v);
    if (succ.empty()) throw StrategyError("Min vertex without successor");
    std::uint32_t pick = succ[0];
    double best = values[succ[0]].raw();
    for (std::uint32_t u : succ) {
      if (values[u].raw() < best) {
        best = values[u].raw();
        pick = u;
      }
    }
    out.choices[game.id(v)] = game.id(pick);
  }
  return out;
}

HDStrategy min_eps_hd(const Game& game, const ValueVector& values,
                      double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (values.size() != game.size()) {
    throw std::invalid_argument("values size does not match game");
  }
  return HDStrategy::min_slack(values, eps);
}

namespace {

// Per-vertex n-step targets: value minus eps/4 (clamped), or 1/eps at
// divergence-flagged vertices.
std::vector<double> eps_targets(const SolveReport& solve, double eps) {
  std::vector<double> targets(solve.values.size(), 0.0);
  for (std::size_t v = 0; v < targets.size(); ++v) {
    ExtValue val = solve.values[v];
    targets[v] = val.is_infinite() ? 1.0 / eps
                                   : std::max(val.raw() - eps / 4.0, 0.0);
  }
  return targets;
}

}  // namespace

MaxMdResult max_md_eps(const Game& game, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite and > 0");
  }
  Normalized norm = normalize_rewards(game);
  SolveOptions opts;
  SolveReport solve = value_iterate(norm.game, opts);
  std::vector<double> targets = eps_targets(solve, eps);
  std::size_t n = horizon_reaching_targets(
      norm.game, targets, solve.iterations + 10 * opts.max_iter + 2);
  double lambda =
      first_admissible_lambda(n, eps, norm.game.max_reward(), {});
  std::size_t ell = horizon_for_eps(lambda, norm.game.max_reward(), eps);
  const double slack = eps / (4.0 * static_cast<double>(std::max<std::size_t>(ell, 1)));

  DiscountedResult disc = discounted_iterate(
      norm.game, lambda, std::min(1e-10, slack * 1e-3));

  MaxMdResult out;
  out.lambda = lambda;
  out.ell = ell;
  out.strategy.player = Owner::kMax;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    if (game.owner(v) != Owner::kMax) continue;
    // Chain heads keep original ids, so the decision vertex's successors in
    // the normalized game are exactly the original successor ids.
    std::uint32_t dv = norm.game.index_of(norm.decision_vertex.at(game.id(v)));
    auto succ = norm.game.successors(dv);
    double best = 0.0;
    for (std::uint32_t u : succ) best = std::max(best, disc.values[u].raw());
    double threshold = std::max(best - slack, 0.0);
    std::uint32_t pick = succ[0];
    for (std::uint32_t u : succ) {
      if (disc.values[u].raw() >= threshold) {
        pick = u;
        break;
      }
    }
    out.strategy.choices[game.id(v)] = norm.game.id(pick);
  }
  return out;
}

HDStrategy max_eps_hd(const Game& game, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite and > 0");
  }
  SolveOptions opts;
  SolveReport solve = value_iterate(game, opts);
  std::vector<double> targets = eps_targets(solve, eps);
  std::size_t n = horizon_reaching_targets(
      game, targets, solve.iterations + 10 * opts.max_iter + 2);

  std::vector<ValueVector> tables;
  tables.reserve(n + 1);
  PackedGame pg = pack(game);
  SweepFn sweep = sweep_fn(Kernel::kAuto);
  std::vector<double> x(game.size(), 0.0), y(game.size(), 0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    sweep(pg, x.data(), y.data(), 1.0);
    x.swap(y);
    tables.push_back(ValueVector::wrap(x));
  }
  return HDStrategy::max_countdown(std::move(tables), eps,
                                   max_md_eps(game, eps / 8.0).strategy);
}

MRStrategy mr_from_weights(const Game& game, const std::string& v,
                           const std::vector<double>& weights) {
  std::uint32_t vi = game.index_of(v);
  Owner player = game.owner(vi);
  if (player == Owner::kChance) {
    throw std::invalid_argument("vertex " + v + " is not a player vertex");
  }
  auto succ = game.successors(vi);
  if (weights.size() != succ.size()) {
    throw std::invalid_argument("weight count does not match successor count");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("weights must be finite and > 0");
    }
    sum += w;
  }

  MRStrategy out;
  out.player = player;
  for (std::uint32_t u = 0; u < game.size(); ++u) {
    if (game.owner(u) != player) continue;
    std::vector<double> p(game.successors(u).size(), 0.0);
    if (u == vi) {
      for (std::size_t k = 0; k < weights.size(); ++k) p[k] = weights[k] / sum;
    } else {
      p[0] = 1.0;
    }
    out.probs[game.id(u)] = std::move(p);
  }
  return out;
}

}  // namespace tgs
