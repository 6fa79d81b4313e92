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

#include "tgsolve/game_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tgsolve/errors.hpp"

namespace tgs {
namespace {

using nlohmann::ordered_json;

void reject_unknown_fields(const ordered_json& obj, const char* where,
                           std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ParseError(std::string(where) + ": unknown field \"" + it.key() +
                       "\"");
    }
  }
}

const ordered_json& require_field(const ordered_json& obj, const char* where,
                                  const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(std::string(where) + ": missing field \"" + key + "\"");
  }
  return *it;
}

}  // namespace

Game load_game(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be an object");
  reject_unknown_fields(doc, "document", {"vertices"});
  const ordered_json& vertices = require_field(doc, "document", "vertices");
  if (!vertices.is_array()) throw ParseError("\"vertices\" must be an array");

  Game game;
  // First pass: declare vertices so successor ids can be resolved in order.
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const ordered_json& entry = vertices[i];
    std::string where = "vertices[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ParseError(where + ": must be an object");
    reject_unknown_fields(entry, where.c_str(),
                          {"id", "owner", "reward", "succ", "dist"});
    const ordered_json& id = require_field(entry, where.c_str(), "id");
    if (!id.is_string() || id.get<std::string>().empty()) {
      throw ParseError(where + ": \"id\" must be a non-empty string");
    }
    const ordered_json& owner = require_field(entry, where.c_str(), "owner");
    if (!owner.is_string()) {
      throw ParseError(where + ": \"owner\" must be a string");
    }
    auto o = owner_from_name(owner.get<std::string>());
    if (!o) {
      throw ParseError(where + ": unknown owner token \"" +
                       owner.get<std::string>() + "\"");
    }
    const ordered_json& reward = require_field(entry, where.c_str(), "reward");
    if (!reward.is_number()) {
      throw ParseError(where + ": \"reward\" must be a number");
    }
    try {
      game.add_vertex(id.get<std::string>(), *o, reward.get<double>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }

  // Second pass: edges and distributions.
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const ordered_json& entry = vertices[i];
    std::string where = "vertices[" + std::to_string(i) + "]";
    std::uint32_t v = static_cast<std::uint32_t>(i);
    const ordered_json& succ = require_field(entry, where.c_str(), "succ");
    if (!succ.is_array()) {
      throw ParseError(where + ": \"succ\" must be an array of ids");
    }
    bool chance = game.owner(v) == Owner::kChance;
    auto dist_it = entry.find("dist");
    if (chance && dist_it == entry.end()) {
      throw ParseError(where + ": chance vertex requires \"dist\"");
    }
    if (!chance && dist_it != entry.end()) {
      throw ParseError(where + ": \"dist\" is only allowed on chance vertices");
    }
    if (chance) {
      if (!dist_it->is_array() || dist_it->size() != succ.size()) {
        throw ParseError(where + ": \"dist\" must align with \"succ\"");
      }
    }
    for (std::size_t k = 0; k < succ.size(); ++k) {
      if (!succ[k].is_string()) {
        throw ParseError(where + ": successor ids must be strings");
      }
      auto target = game.find(succ[k].get<std::string>());
      if (!target) {
        throw ParseError(where + ": unknown successor id \"" +
                         succ[k].get<std::string>() + "\"");
      }
      if (chance) {
        const ordered_json& p = (*dist_it)[k];
        if (!p.is_number()) {
          throw ParseError(where + ": probabilities must be numbers");
        }
        game.add_edge(v, *target, p.get<double>());
      } else {
        game.add_edge(v, *target);
      }
    }
  }

  require_valid(game);
  game.renormalize_chance();
  return game;
}

Game load_game_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_game(buf.str());
}

std::string save_game(const Game& game) {
  ordered_json vertices = ordered_json::array();
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    ordered_json entry;
    entry["id"] = game.id(v);
    entry["owner"] = owner_name(game.owner(v));
    entry["reward"] = game.reward(v);
    ordered_json succ = ordered_json::array();
    for (std::uint32_t u : game.successors(v)) succ.push_back(game.id(u));
    entry["succ"] = std::move(succ);
    if (game.owner(v) == Owner::kChance) {
      ordered_json dist = ordered_json::array();
      for (double p : game.chance_dist(v)) dist.push_back(p);
      entry["dist"] = std::move(dist);
    }
    vertices.push_back(std::move(entry));
  }
  ordered_json doc;
  doc["vertices"] = std::move(vertices);
  return doc.dump(2) + "\n";
}

void save_game_file(const Game& game, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write game file: " + path);
  out << save_game(game);
}

}  // namespace tgs
