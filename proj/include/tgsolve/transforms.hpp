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

#ifndef TGSOLVE_TRANSFORMS_HPP_
#define TGSOLVE_TRANSFORMS_HPP_

#include <string>
#include <unordered_map>

#include "tgsolve/game.hpp"
#include "tgsolve/strategy.hpp"

namespace tgs {

// Reduces a reachability objective to total reward: target vertices get
// reward 1 and a single transition to a fresh absorbing chance sink with
// reward 0; every other vertex gets reward 0. The sink is always added, so
// the output has exactly one more vertex than the input. For every strategy
// pair, expected total reward in the output equals the probability of
// visiting a target in the input.
struct ReachToAcc {
  Game game;
  std::string sink_id;
};
ReachToAcc reach_to_acc(const Game& game, const TargetSet& targets);

// Caps rewards at 1 by splitting each vertex v with r(v) > 1 into a
// deterministic chain of ceil(r(v)) vertices, each with reward
// r(v)/ceil(r(v)). The chain head keeps v's id (so incoming edges and start
// vertices are unaffected); the final chain vertex inherits v's owner and
// successors and is where strategies choose. decision_vertex maps each
// original id to that final vertex (identity for unsplit vertices).
struct Normalized {
  Game game;
  std::unordered_map<std::string, std::string> decision_vertex;
};
Normalized normalize_rewards(const Game& game);

// Re-keys a strategy on the original game to the normalized game's decision
// vertices.
MDStrategy lift_to_normalized(const Normalized& norm, const MDStrategy& md);

// Fixes one player's choices, turning their vertices into Dirac chance
// vertices; ids, order and rewards are preserved.
Game fix_max_choices(const Game& game, const MDStrategy& sigma);
Game fix_min_choices(const Game& game, const MDStrategy& pi);

// Fixing both memoryless strategies yields a Markov chain (a game with no
// player vertices). The randomized variant keeps each owned vertex's
// positive-probability successors with the strategy's distribution.
Game induced_chain(const Game& game, const MDStrategy& sigma,
                   const MDStrategy& pi);
Game induced_chain(const Game& game, const MRStrategy& sigma,
                   const MRStrategy& pi);

}  // namespace tgs

#endif  // TGSOLVE_TRANSFORMS_HPP_
