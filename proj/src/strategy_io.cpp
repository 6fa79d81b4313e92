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

#include "tgsolve/strategy_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tgsolve/errors.hpp"

namespace tgs {
namespace {

using nlohmann::ordered_json;

ordered_json value_to_json(ExtValue v) {
  if (v.is_infinite()) return "inf";
  return v.raw();
}

ExtValue value_from_json(const ordered_json& j, const char* where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtValue::infinity();
    throw ParseError(std::string(where) + ": expected a number or \"inf\"");
  }
  if (!j.is_number()) {
    throw ParseError(std::string(where) + ": expected a number or \"inf\"");
  }
  return ExtValue(j.get<double>());
}

ordered_json vector_to_json(const Game& game, const ValueVector& vec) {
  ordered_json out;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    out[game.id(v)] = value_to_json(vec[v]);
  }
  return out;
}

ValueVector vector_from_json(const Game& game, const ordered_json& j,
                             const char* where) {
  if (!j.is_object()) {
    throw ParseError(std::string(where) + ": expected an id-keyed object");
  }
  ValueVector vec(game.size());
  std::size_t seen = 0;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto v = game.find(it.key());
    if (!v) {
      throw ParseError(std::string(where) + ": unknown vertex " + it.key());
    }
    vec.set(*v, value_from_json(it.value(), where));
    ++seen;
  }
  if (seen != game.size()) {
    throw ParseError(std::string(where) + ": missing vertex entries");
  }
  return vec;
}

Owner parse_player(const ordered_json& doc) {
  auto it = doc.find("player");
  if (it == doc.end() || !it->is_string()) {
    throw ParseError("strategy: missing \"player\"");
  }
  auto o = owner_from_name(it->get<std::string>());
  if (!o || *o == Owner::kChance) {
    throw ParseError("strategy: player must be \"max\" or \"min\"");
  }
  return *o;
}

MDStrategy md_from_json(const ordered_json& doc) {
  MDStrategy md;
  md.player = parse_player(doc);
  auto it = doc.find("choices");
  if (it == doc.end() || !it->is_object()) {
    throw ParseError("strategy: missing \"choices\" object");
  }
  for (auto c = it->begin(); c != it->end(); ++c) {
    if (!c.value().is_string()) {
      throw ParseError("strategy: choices must map ids to ids");
    }
    md.choices[c.key()] = c.value().get<std::string>();
  }
  return md;
}

ordered_json md_to_json(const MDStrategy& md) {
  ordered_json doc;
  doc["type"] = "md";
  doc["player"] = owner_name(md.player);
  ordered_json choices = ordered_json::object();
  for (const auto& [v, u] : md.choices) choices[v] = u;
  doc["choices"] = std::move(choices);
  return doc;
}

}  // namespace

std::string save_strategy(const MDStrategy& md) {
  return md_to_json(md).dump(2) + "\n";
}

std::string save_strategy(const Game& game, const MRStrategy& mr) {
  (void)game;
  ordered_json doc;
  doc["type"] = "mr";
  doc["player"] = owner_name(mr.player);
  ordered_json probs = ordered_json::object();
  for (const auto& [v, p] : mr.probs) probs[v] = p;
  doc["probs"] = std::move(probs);
  return doc.dump(2) + "\n";
}

std::string save_strategy(const Game& game, const HDStrategy& hd) {
  ordered_json doc;
  doc["type"] = "hd";
  doc["player"] = owner_name(hd.player());
  switch (hd.kind()) {
    case HDStrategy::Kind::kWrappedMd:
      doc["kind"] = "wrapped-md";
      doc["md"] = md_to_json(hd.md());
      break;
    case HDStrategy::Kind::kMinSlack:
      doc["kind"] = "min-slack";
      doc["eps"] = hd.eps();
      doc["values"] = vector_to_json(game, hd.values());
      break;
    case HDStrategy::Kind::kMaxCountdown: {
      doc["kind"] = "max-countdown";
      doc["eps"] = hd.eps();
      ordered_json tables = ordered_json::array();
      for (const ValueVector& t : hd.tables()) {
        tables.push_back(vector_to_json(game, t));
      }
      doc["tables"] = std::move(tables);
      doc["tail"] = md_to_json(hd.md());
      break;
    }
  }
  return doc.dump(2) + "\n";
}

std::string save_strategy(const Game& game, const Strategy& s) {
  if (const auto* md = std::get_if<MDStrategy>(&s)) return save_strategy(*md);
  if (const auto* mr = std::get_if<MRStrategy>(&s)) {
    return save_strategy(game, *mr);
  }
  return save_strategy(game, std::get<HDStrategy>(s));
}

Strategy load_strategy(const Game& game, const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("strategy: top level must be an object");

  std::string type;
  if (auto it = doc.find("type"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("strategy: \"type\" must be a string");
    type = it->get<std::string>();
  } else if (doc.contains("probs")) {
    type = "mr";
  } else if (doc.contains("kind")) {
    type = "hd";
  } else {
    type = "md";
  }

  if (type == "md") return md_from_json(doc);

  if (type == "mr") {
    MRStrategy mr;
    mr.player = parse_player(doc);
    auto it = doc.find("probs");
    if (it == doc.end() || !it->is_object()) {
      throw ParseError("strategy: missing \"probs\" object");
    }
    for (auto p = it->begin(); p != it->end(); ++p) {
      if (!p.value().is_array()) {
        throw ParseError("strategy: probs must map ids to arrays");
      }
      mr.probs[p.key()] = p.value().get<std::vector<double>>();
    }
    return mr;
  }

  if (type != "hd") throw ParseError("strategy: unknown type \"" + type + "\"");

  auto kind_it = doc.find("kind");
  if (kind_it == doc.end() || !kind_it->is_string()) {
    throw ParseError("strategy: hd requires \"kind\"");
  }
  std::string kind = kind_it->get<std::string>();
  if (kind == "wrapped-md") {
    return HDStrategy::wrap(md_from_json(doc.at("md")));
  }
  if (kind == "min-slack") {
    double eps = doc.at("eps").get<double>();
    ValueVector values = vector_from_json(game, doc.at("values"), "values");
    return HDStrategy::min_slack(std::move(values), eps);
  }
  if (kind == "max-countdown") {
    double eps = doc.at("eps").get<double>();
    const ordered_json& tables_json = doc.at("tables");
    if (!tables_json.is_array() || tables_json.empty()) {
      throw ParseError("strategy: \"tables\" must be a non-empty array");
    }
    std::vector<ValueVector> tables;
    tables.reserve(tables_json.size());
    for (const auto& t : tables_json) {
      tables.push_back(vector_from_json(game, t, "tables"));
    }
    return HDStrategy::max_countdown(std::move(tables), eps,
                                     md_from_json(doc.at("tail")));
  }
  throw ParseError("strategy: unknown hd kind \"" + kind + "\"");
}

Strategy load_strategy_file(const Game& game, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open strategy file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_strategy(game, buf.str());
}

}  // namespace tgs
