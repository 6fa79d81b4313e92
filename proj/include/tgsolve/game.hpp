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

#ifndef TGSOLVE_GAME_HPP_
#define TGSOLVE_GAME_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tgs {

// Who moves at a vertex: the maximizer, the minimizer, or chance.
enum class Owner : std::uint8_t { kMax = 0, kMin = 1, kChance = 2 };

const char* owner_name(Owner o);
std::optional<Owner> owner_from_name(std::string_view name);

// Reachability objective: the set of target vertex ids.
using TargetSet = std::set<std::string>;

// A broken game invariant, reported as data rather than thrown.
struct Violation {
  std::string vertex_id;
  std::string rule;
  std::string detail;
};

// Finite turn-based stochastic game graph. Vertices are indexed in insertion
// order; successor lists are ordered and that order is meaningful (ties in
// argmax/argmin break toward the first listed successor). Chance vertices
// carry a probability per successor, aligned with the successor list.
//
// Instances are assembled through add_vertex/add_edge and treated as
// immutable afterwards; they are then safe to share across threads.
class Game {
 public:
  Game() = default;

  // Assembly. add_vertex throws on duplicate or empty ids; edges may be added
  // in any order after both endpoints exist.
  std::uint32_t add_vertex(std::string id, Owner owner, double reward);
  void add_edge(std::uint32_t from, std::uint32_t to);
  void add_edge(std::uint32_t from, std::uint32_t to, double prob);
  void add_edge(std::string_view from, std::string_view to);
  void add_edge(std::string_view from, std::string_view to, double prob);

  // Rescales every chance distribution to sum to exactly 1 (no-op for
  // distributions that already do).
  void renormalize_chance();

  std::size_t size() const { return owners_.size(); }
  const std::string& id(std::uint32_t v) const { return ids_[v]; }
  Owner owner(std::uint32_t v) const { return owners_[v]; }
  double reward(std::uint32_t v) const { return rewards_[v]; }
  std::span<const std::uint32_t> successors(std::uint32_t v) const {
    return {succ_[v].data(), succ_[v].size()};
  }
  std::span<const double> chance_dist(std::uint32_t v) const {
    return {dist_[v].data(), dist_[v].size()};
  }

  bool has_vertex(std::string_view id) const;
  std::optional<std::uint32_t> find(std::string_view id) const;
  // Index lookup that throws StrategyError-free invalid_argument on misses.
  std::uint32_t index_of(std::string_view id) const;

  double max_reward() const;

 private:
  std::vector<std::string> ids_;
  std::vector<Owner> owners_;
  std::vector<double> rewards_;
  std::vector<std::vector<std::uint32_t>> succ_;
  std::vector<std::vector<double>> dist_;  // empty for player vertices
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Checks every game invariant: totality, positive chance distributions
// summing to 1 within 1e-9, dist/successor alignment, finite non-negative
// rewards, no duplicate successors. Empty result means the game is valid.
std::vector<Violation> validate(const Game& game);

// Convenience: throws ValidationError listing the violations.
void require_valid(const Game& game);

// An id not present in `game`, derived from `base` (used by transforms that
// introduce fresh vertices).
std::string fresh_id(const Game& game, const std::string& base);

}  // namespace tgs

#endif  // TGSOLVE_GAME_HPP_
