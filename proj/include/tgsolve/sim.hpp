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

#ifndef TGSOLVE_SIM_HPP_
#define TGSOLVE_SIM_HPP_

#include <cstdint>
#include <optional>
#include <variant>

#include "tgsolve/game.hpp"
#include "tgsolve/strategy.hpp"

namespace tgs {

// Any strategy kind a rollout can follow.
using Strategy = std::variant<MDStrategy, MRStrategy, HDStrategy>;

// Rollout statistics. Identical (game, strategies, seed, episodes, horizon,
// targets, threads) inputs reproduce this struct bit-identically; thread
// count does not change the result (fixed per-episode substreams, fixed
// block merge order).
struct SimStats {
  std::uint64_t episodes = 0;
  std::size_t horizon = 0;
  double mean_acc = 0.0;
  double stderr_acc = 0.0;
  double truncated_fraction = 0.0;  // episodes ending where reward can still accrue
  double bias_bound = 0.0;          // truncated_fraction * max_reward * horizon
  std::optional<double> reach_fraction;  // set iff targets were given
  std::uint64_t seed = 0;
};

struct SimOptions {
  std::size_t horizon = 10000;
  std::uint64_t episodes = 10000;
  std::uint64_t seed = 0;
  std::optional<TargetSet> targets;
  int threads = 1;
};

// Samples `episodes` runs of the pair (sigma, pi) from vertex v, summing the
// rewards of the horizon+1 visited vertices. Owned vertices query their
// strategy (history-dependent rules receive the step index), chance vertices
// sample their distribution from a per-episode SplitMix64 substream.
// Truncation is reported, never hidden: truncated episodes contribute their
// partial sum and bump truncated_fraction.
SimStats simulate(const Game& game, const Strategy& sigma, const Strategy& pi,
                  std::uint32_t v, const SimOptions& opts = {});
SimStats simulate(const Game& game, const Strategy& sigma, const Strategy& pi,
                  const std::string& v, const SimOptions& opts = {});

}  // namespace tgs

#endif  // TGSOLVE_SIM_HPP_
