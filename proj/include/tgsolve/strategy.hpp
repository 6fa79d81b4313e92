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

#ifndef TGSOLVE_STRATEGY_HPP_
#define TGSOLVE_STRATEGY_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tgsolve/game.hpp"
#include "tgsolve/value_vector.hpp"

namespace tgs {

// Memoryless deterministic strategy: one chosen successor per owned vertex.
// Keyed by vertex id so strategies serialize independently of vertex order.
struct MDStrategy {
  Owner player = Owner::kMax;
  std::map<std::string, std::string> choices;
};

// Memoryless randomized strategy: per owned vertex a probability per
// successor, aligned with the game's successor order. Entries may be zero
// (unsupported successors); the positive entries must sum to 1 within 1e-9.
struct MRStrategy {
  Owner player = Owner::kMax;
  std::map<std::string, std::vector<double>> probs;
};

// Deterministic history-dependent strategy. All representable rules are
// functions of (current vertex, number of transitions so far), which keeps
// them finite and replayable:
//   kWrappedMd     -- ignores the step index.
//   kMinSlack      -- Min rule: at step m pick the first successor u' with
//                     r(u) + K(u') <= K(u) + eps/2^(m+1) for a fixed-point
//                     vector K.
//   kMaxCountdown  -- Max rule: with finite-horizon tables T_0..T_n, at step
//                     m <= n pick the first successor u' with
//                     r(u) + T_{n-m-1}(u') >= T_{n-m}(u) - eps/2^(m+1)
//                     (T_{-1} = 0), then follow a memoryless tail strategy.
class HDStrategy {
 public:
  enum class Kind { kWrappedMd, kMinSlack, kMaxCountdown };

  static HDStrategy wrap(MDStrategy md);
  static HDStrategy min_slack(ValueVector values, double eps);
  static HDStrategy max_countdown(std::vector<ValueVector> tables, double eps,
                                  MDStrategy tail);

  // Successor chosen for a history ending at `vertex` after `step`
  // transitions. Deterministic; only ever returns listed successors.
  std::uint32_t choose(const Game& game, std::uint32_t vertex,
                       std::size_t step) const;
  std::string choose_id(const Game& game, const std::string& vertex,
                        std::size_t step) const;

  Kind kind() const { return kind_; }
  Owner player() const { return player_; }
  double eps() const { return eps_; }
  const MDStrategy& md() const { return md_; }
  const ValueVector& values() const { return values_; }
  const std::vector<ValueVector>& tables() const { return tables_; }

 private:
  Kind kind_ = Kind::kWrappedMd;
  Owner player_ = Owner::kMax;
  double eps_ = 0.0;
  MDStrategy md_;               // wrapped strategy, or the countdown tail
  ValueVector values_;          // kMinSlack
  std::vector<ValueVector> tables_;  // kMaxCountdown: T_0..T_n
};

// Throws StrategyError unless `md` covers exactly the vertices owned by its
// player and every chosen successor is listed.
void require_covering(const Game& game, const MDStrategy& md);
void require_covering(const Game& game, const MRStrategy& mr);

// Chosen successor index per vertex (UINT32_MAX where not owned).
std::vector<std::uint32_t> index_choices(const Game& game,
                                         const MDStrategy& md);

// --- Syntheses ---------------------------------------------------------

// Optimal memoryless Min strategy: at each Min vertex the first successor
// attaining the minimum of `values` (a converged fixed-point vector).
MDStrategy min_md_optimal(const Game& game, const ValueVector& values);

// eps-optimal deterministic Min strategy with the per-step slack schedule
// eps/2^(m+1): guarantees expected total reward <= value + eps against any
// opponent when `values` is a fixed point.
HDStrategy min_eps_hd(const Game& game, const ValueVector& values, double eps);

struct MaxMdResult {
  MDStrategy strategy;
  double lambda = 0.0;
  std::size_t ell = 0;
};

// eps-optimal memoryless Max strategy via the discounted pipeline:
// normalize rewards, pick a discount factor + horizon, solve the discounted
// fixed point, then take the per-vertex eps/(4*ell)-greedy choice.
MaxMdResult max_md_eps(const Game& game, double eps);

// eps-optimal deterministic Max strategy: horizon-countdown rule over the
// finite-horizon tables, switching to max_md_eps(game, eps/8) afterwards.
// The slack split (eps/4 horizon gap + sum eps/2^(m+1) per step + eps/8
// tail) totals below eps.
HDStrategy max_eps_hd(const Game& game, double eps);

// Memoryless randomized strategy putting normalized `weights` on the
// successors of v; every other vertex owned by the same player is a Dirac
// choice of its first successor.
MRStrategy mr_from_weights(const Game& game, const std::string& v,
                           const std::vector<double>& weights);

}  // namespace tgs

#endif  // TGSOLVE_STRATEGY_HPP_
