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

#ifndef TGSOLVE_GAME_IO_HPP_
#define TGSOLVE_GAME_IO_HPP_

#include <string>

#include "tgsolve/game.hpp"

namespace tgs {

// Game file format: a single JSON document
//   {"vertices":[{"id":"v","owner":"max|min|chance","reward":0.0,
//                 "succ":["a","b"],"dist":[0.5,0.5]}, ...]}
// "dist" is required iff owner is "chance" and is aligned index-wise with
// "succ". Unknown fields are rejected, ids must be unique non-empty strings.
//
// load rejects games that fail validation and renormalizes chance
// distributions (sum within 1e-9 of 1 is accepted, then rescaled to exactly
// 1). save(load(x)) preserves ids, owners, rewards and successor order
// exactly and probabilities to within 1e-12.
Game load_game(const std::string& text);
Game load_game_file(const std::string& path);

std::string save_game(const Game& game);
void save_game_file(const Game& game, const std::string& path);

}  // namespace tgs

#endif  // TGSOLVE_GAME_IO_HPP_
