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

#include "tgsolve/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "tgsolve/errors.hpp"

namespace tgs {

ReachToAcc reach_to_acc(const Game& game, const TargetSet& targets) {
  require_valid(game);
  for (const std::string& t : targets) {
    if (!game.has_vertex(t)) {
      throw std::invalid_argument("unknown target id: " + t);
    }
  }

  ReachToAcc out;
  out.sink_id = fresh_id(game, "sink");
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    bool is_target = targets.count(game.id(v)) != 0;
    out.game.add_vertex(game.id(v), game.owner(v), is_target ? 1.0 : 0.0);
  }
  std::uint32_t sink =
      out.game.add_vertex(out.sink_id, Owner::kChance, 0.0);
  out.game.add_edge(sink, sink, 1.0);

  for (std::uint32_t v = 0; v < game.size(); ++v) {
    if (targets.count(game.id(v)) != 0) {
      if (game.owner(v) == Owner::kChance) {
        out.game.add_edge(v, sink, 1.0);
      } else {
        out.game.add_edge(v, sink);
      }
      continue;
    }
    auto succ = game.successors(v);
    auto dist = game.chance_dist(v);
    for (std::size_t k = 0; k < succ.size(); ++k) {
      if (game.owner(v) == Owner::kChance) {
        out.game.add_edge(v, succ[k], dist[k]);
      } else {
        out.game.add_edge(v, succ[k]);
      }
    }
  }
  return out;
}

Normalized normalize_rewards(const Game& game) {
  require_valid(game);
  Normalized out;

  // Heads keep the original ids, so successor lists and incoming edges can
  // be copied verbatim; only the final chain vertex carries the choice.
  struct Split {
    std::uint32_t pieces;
    std::string last_id;
  };
  std::vector<Split> splits(game.size());

  for (std::uint32_t v = 0; v < game.size(); ++v) {
    double r = game.reward(v);
    if (r <= 1.0) {
      splits[v] = {1, game.id(v)};
      out.game.add_vertex(game.id(v), game.owner(v), r);
      out.decision_vertex[game.id(v)] = game.id(v);
      continue;
    }
    std::uint32_t m = static_cast<std::uint32_t>(std::ceil(r));
    double piece = r / static_cast<double>(m);
    std::string prev = game.id(v);
    out.game.add_vertex(prev, Owner::kChance, piece);
    for (std::uint32_t i = 1; i < m; ++i) {
      std::string id = fresh_id(out.game, game.id(v) + "#" + std::to_string(i));
      bool last = (i == m - 1);
      out.game.add_vertex(id, last ? game.owner(v) : Owner::kChance, piece);
      prev = id;
    }
    splits[v] = {m, prev};
    out.decision_vertex[game.id(v)] = prev;
  }

  for (std::uint32_t v = 0; v < game.size(); ++v) {
    const Split& split = splits[v];
    if (split.pieces > 1) {
      // Dirac chain from the head down to the deciding vertex.
      std::string prev = game.id(v);
      for (std::uint32_t i = 1; i < split.pieces; ++i) {
        std::string next = i == split.pieces - 1
                               ? split.last_id
                               : game.id(v) + "#" + std::to_string(i);
        out.game.add_edge(prev, next, 1.0);
        prev = next;
      }
    }
    std::uint32_t from = out.game.index_of(split.last_id);
    auto succ = game.successors(v);
    auto dist = game.chance_dist(v);
    for (std::size_t k = 0; k < succ.size(); ++k) {
      std::uint32_t to = out.game.index_of(game.id(succ[k]));
      if (game.owner(v) == Owner::kChance) {
        out.game.add_edge(from, to, dist[k]);
      } else {
        out.game.add_edge(from, to);
      }
    }
  }
  return out;
}

MDStrategy lift_to_normalized(const Normalized& norm, const MDStrategy& md) {
  MDStrategy out;
  out.player = md.player;
  for (const auto& [v, u] : md.choices) {
    auto it = norm.decision_vertex.find(v);
    if (it == norm.decision_vertex.end()) {
      throw StrategyError("vertex " + v + " has no normalized counterpart");
    }
    out.choices[it->second] = u;
  }
  return out;
}

namespace {

Game fix_player(const Game& game, const MDStrategy& md, Owner fixed) {
  require_valid(game);
  if (md.player != fixed) {
    throw StrategyError("strategy player does not match the fixed side");
  }
  auto chosen = index_choices(game, md);
  Game out;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    Owner o = game.owner(v) == fixed ? Owner::kChance : game.owner(v);
    out.add_vertex(game.id(v), o, game.reward(v));
  }
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    if (game.owner(v) == fixed) {
      out.add_edge(v, chosen[v], 1.0);
      continue;
    }
    auto succ = game.successors(v);
    auto dist = game.chance_dist(v);
    for (std::size_t k = 0; k < succ.size(); ++k) {
      if (game.owner(v) == Owner::kChance) {
        out.add_edge(v, succ[k], dist[k]);
      } else {
        out.add_edge(v, succ[k]);
      }
    }
  }
  return out;
}

}  // namespace

Game fix_max_choices(const Game& game, const MDStrategy& sigma) {
  return fix_player(game, sigma, Owner::kMax);
}

Game fix_min_choices(const Game& game, const MDStrategy& pi) {
  return fix_player(game, pi, Owner::kMin);
}

Game induced_chain(const Game& game, const MDStrategy& sigma,
                   const MDStrategy& pi) {
  return fix_min_choices(fix_max_choices(game, sigma), pi);
}

Game induced_chain(const Game& game, const MRStrategy& sigma,
                   const MRStrategy& pi) {
  require_valid(game);
  if (sigma.player != Owner::kMax || pi.player != Owner::kMin) {
    throw StrategyError("induced_chain expects a (max, min) strategy pair");
  }
  require_covering(game, sigma);
  require_covering(game, pi);

  Game out;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    out.add_vertex(game.id(v), Owner::kChance, game.reward(v));
  }
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    auto succ = game.successors(v);
    if (game.owner(v) == Owner::kChance) {
      auto dist = game.chance_dist(v);
      for (std::size_t k = 0; k < succ.size(); ++k) {
        out.add_edge(v, succ[k], dist[k]);
      }
      continue;
    }
    const MRStrategy& strat = game.owner(v) == Owner::kMax ? sigma : pi;
    const auto& probs = strat.probs.at(game.id(v));
    for (std::size_t k = 0; k < succ.size(); ++k) {
      if (probs[k] > 0.0) out.add_edge(v, succ[k], probs[k]);
    }
  }
  out.renormalize_chance();
  return out;
}

}  // namespace tgs
