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

#ifndef TGSOLVE_STRATEGY_IO_HPP_
#define TGSOLVE_STRATEGY_IO_HPP_

#include <string>

#include "tgsolve/game.hpp"
#include "tgsolve/sim.hpp"
#include "tgsolve/strategy.hpp"

namespace tgs {

// Strategy file formats (JSON):
//   MD: {"type":"md","player":"max|min","choices":{"v":"u",...}}
//   MR: {"type":"mr","player":...,"probs":{"v":[0.5,0.5],...}}
//       (arrays aligned with the game's successor order)
//   HD: {"type":"hd","kind":"wrapped-md|min-slack|max-countdown", ...}
//       with the rule's eps and tables/values keyed by vertex id
//       (infinite entries encoded as the string "inf").
// Loading tolerates a missing "type" by inferring the kind from the shape;
// HD rules need the game to re-index their tables.
std::string save_strategy(const MDStrategy& md);
std::string save_strategy(const Game& game, const MRStrategy& mr);
std::string save_strategy(const Game& game, const HDStrategy& hd);
std::string save_strategy(const Game& game, const Strategy& s);

Strategy load_strategy(const Game& game, const std::string& text);
Strategy load_strategy_file(const Game& game, const std::string& path);

}  // namespace tgs

#endif  // TGSOLVE_STRATEGY_IO_HPP_
