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

#include "tgsolve/game.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "tgsolve/errors.hpp"

namespace tgs {

const char* owner_name(Owner o) {
  switch (o) {
    case Owner::kMax:
      return "max";
    case Owner::kMin:
      return "min";
    case Owner::kChance:
      return "chance";
  }
  return "?";
}

std::optional<Owner> owner_from_name(std::string_view name) {
  if (name == "max") return Owner::kMax;
  if (name == "min") return Owner::kMin;
  if (name == "chance") return Owner::kChance;
  return std::nullopt;
}

std::uint32_t Game::add_vertex(std::string id, Owner owner, double reward) {
  if (id.empty()) throw std::invalid_argument("vertex id must be non-empty");
  if (index_.count(id) != 0) {
    throw std::invalid_argument("duplicate vertex id: " + id);
  }
  std::uint32_t v = static_cast<std::uint32_t>(ids_.size());
  index_.emplace(id, v);
  ids_.push_back(std::move(id));
  owners_.push_back(owner);
  rewards_.push_back(reward);
  succ_.emplace_back();
  dist_.emplace_back();
  return v;
}

void Game::add_edge(std::uint32_t from, std::uint32_t to) {
  if (from >= size() || to >= size()) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  succ_[from].push_back(to);
}

void Game::add_edge(std::uint32_t from, std::uint32_t to, double prob) {
  add_edge(from, to);
  dist_[from].push_back(prob);
}

void Game::add_edge(std::string_view from, std::string_view to) {
  add_edge(index_of(from), index_of(to));
}

void Game::add_edge(std::string_view from, std::string_view to, double prob) {
  add_edge(index_of(from), index_of(to), prob);
}

void Game::renormalize_chance() {
  for (std::uint32_t v = 0; v < size(); ++v) {
    if (owners_[v] != Owner::kChance || dist_[v].empty()) continue;
    double sum = 0.0;
    for (double p : dist_[v]) sum += p;
    if (sum == 1.0 || sum == 0.0) continue;
    for (double& p : dist_[v]) p /= sum;
  }
}

bool Game::has_vertex(std::string_view id) const {
  return index_.find(std::string(id)) != index_.end();
}

std::optional<std::uint32_t> Game::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Game::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw std::invalid_argument("unknown vertex id: " + std::string(id));
  }
  return it->second;
}

double Game::max_reward() const {
  double m = 0.0;
  for (double r : rewards_) m = std::max(m, r);
  return m;
}

std::vector<Violation> validate(const Game& game) {
  std::vector<Violation> out;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    const std::string& id = game.id(v);
    auto succ = game.successors(v);
    if (succ.empty()) {
      out.push_back({id, "totality", "vertex has no successor"});
    }
    std::unordered_set<std::uint32_t> seen;
    for (std::uint32_t u : succ) {
      if (!seen.insert(u).second) {
        out.push_back({id, "duplicate-successor",
                       "successor " + game.id(u) + " listed twice"});
      }
    }
    double r = game.reward(v);
    if (!std::isfinite(r) || r < 0.0) {
      out.push_back({id, "reward-range", "reward must be finite and >= 0"});
    }
    auto dist = game.chance_dist(v);
    if (game.owner(v) == Owner::kChance) {
      if (dist.size() != succ.size()) {
        out.push_back({id, "dist-alignment",
                       "distribution does not cover the successor list"});
      } else if (!succ.empty()) {
        double sum = 0.0;
        bool positive = true;
        for (double p : dist) {
          if (!(p > 0.0) || !std::isfinite(p)) positive = false;
          sum += p;
        }
        if (!positive) {
          out.push_back({id, "dist-positive",
                         "chance probabilities must be strictly positive"});
        } else if (std::abs(sum - 1.0) > 1e-9) {
          std::ostringstream os;
          os << "probabilities sum to " << sum;
          out.push_back({id, "dist-sum", os.str()});
        }
      }
    } else if (!dist.empty()) {
      out.push_back({id, "dist-alignment",
                     "player vertex carries a probability distribution"});
    }
  }
  return out;
}

void require_valid(const Game& game) {
  auto violations = validate(game);
  if (violations.empty()) return;
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].vertex_id << ": " << violations[i].rule << " ("
       << violations[i].detail << ")";
  }
  throw ValidationError(os.str());
}

std::string fresh_id(const Game& game, const std::string& base) {
  if (!game.has_vertex(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + "#" + std::to_string(i);
    if (!game.has_vertex(candidate)) return candidate;
  }
}

}  // namespace tgs
