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

#include "tgsolve/gallery.hpp"

#include <cmath>
#include <stdexcept>

namespace tgs {
namespace {

std::string col_id(const char* row, std::uint32_t x) {
  return std::string(row) + std::to_string(x);
}

void require_truncation(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("truncation must be >= 1");
}

}  // namespace

Fig1 build_fig1(std::uint32_t n) {
  require_truncation(n);
  Fig1 out;
  Game& g = out.game;

  // Column 0 carries the named vertices; columns 1..N repeat the five rows.
  g.add_vertex("v", Owner::kMax, 0.0);
  g.add_vertex("s", Owner::kChance, 0.0);
  g.add_vertex("u", Owner::kMin, 0.0);
  g.add_vertex("t", Owner::kChance, 0.0);
  g.add_vertex("p", Owner::kChance, 0.0);
  for (std::uint32_t x = 1; x <= n; ++x) {
    g.add_vertex(col_id("b", x), Owner::kMax, 0.0);     // bottom row
    g.add_vertex(col_id("s", x), Owner::kChance, 0.0);  // losing drain row
    g.add_vertex(col_id("d", x), Owner::kChance, 0.0);  // drain toward u
    g.add_vertex(col_id("t", x), Owner::kChance, 0.0);  // winning drain row
    g.add_vertex(col_id("p", x), Owner::kChance, 0.0);  // drain toward p
  }

  // Bottom row: walk right or exit up; the last column can only exit.
  for (std::uint32_t x = 0; x <= n; ++x) {
    std::string here = x == 0 ? "v" : col_id("b", x);
    std::string up = x == 0 ? "s" : col_id("s", x);
    if (x < n) g.add_edge(here, col_id("b", x + 1));
    g.add_edge(here, up);
  }
  // Losing drain row: coin between up (toward u) and left (toward s).
  g.add_edge("s", "s", 1.0);
  for (std::uint32_t x = 1; x <= n; ++x) {
    std::string left = x == 1 ? "s" : col_id("s", x - 1);
    g.add_edge(col_id("s", x), col_id("d", x), 0.5);
    g.add_edge(col_id("s", x), left, 0.5);
  }
  // Row draining deterministically left into the Min hub.
  for (std::uint32_t x = 1; x <= n; ++x) {
    std::string left = x == 1 ? "u" : col_id("d", x - 1);
    g.add_edge(col_id("d", x), left, 1.0);
  }
  // Min hub: one escape column per 0..N.
  g.add_edge("u", "t");
  for (std::uint32_t x = 1; x <= n; ++x) g.add_edge("u", col_id("t", x));
  // Winning drain row: coin between up (toward p) and left (toward t).
  g.add_edge("t", "t", 1.0);
  for (std::uint32_t x = 1; x <= n; ++x) {
    std::string left = x == 1 ? "t" : col_id("t", x - 1);
    g.add_edge(col_id("t", x), col_id("p", x), 0.5);
    g.add_edge(col_id("t", x), left, 0.5);
  }
  // Wrap-around row back to v.
  for (std::uint32_t x = 1; x <= n; ++x) {
    std::string left = x == 1 ? "p" : col_id("p", x - 1);
    g.add_edge(col_id("p", x), left, 1.0);
  }
  g.add_edge("p", "v", 1.0);

  out.targets = {"t"};
  return out;
}

double fig1_md_value(std::uint32_t j, std::uint32_t k) {
  double ps = j == 0 ? 1.0 : std::ldexp(1.0, -static_cast<int>(j));
  double pt = k == 0 ? 1.0 : std::ldexp(1.0, -static_cast<int>(k));
  return (1.0 - ps) * pt / (ps + pt - ps * pt);
}

MDStrategy fig1_max_column(const Game& game, std::uint32_t j) {
  MDStrategy out;
  out.player = Owner::kMax;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    if (game.owner(v) != Owner::kMax) continue;
    auto succ = game.successors(v);
    const std::string& id = game.id(v);
    std::uint32_t column = id == "v" ? 0u : std::stoul(id.substr(1));
    // succ[0] walks right where it exists; the exit edge is last.
    bool exit_here = column >= j || succ.size() == 1;
    out.choices[id] = game.id(exit_here ? succ.back() : succ.front());
  }
  return out;
}

MDStrategy fig1_min_column(const Game& game, std::uint32_t k) {
  MDStrategy out;
  out.player = Owner::kMin;
  std::uint32_t u = game.index_of("u");
  auto succ = game.successors(u);
  if (k >= succ.size()) throw std::invalid_argument("column out of range");
  out.choices["u"] = game.id(succ[k]);
  return out;
}

Fig1NoMax build_fig1_no_max_optimal(std::uint32_t n) {
  require_truncation(n);
  Fig1NoMax out;
  Game& g = out.game;

  g.add_vertex("v", Owner::kMax, 0.0);
  g.add_vertex("s", Owner::kChance, 0.0);
  g.add_vertex("uprime", Owner::kChance, 0.0);
  for (std::uint32_t x = 1; x <= n; ++x) {
    g.add_vertex(col_id("b", x), Owner::kMax, 0.0);
    g.add_vertex(col_id("s", x), Owner::kChance, 0.0);
    g.add_vertex(col_id("d", x), Owner::kChance, 0.0);
  }
  for (std::uint32_t x = 0; x <= n; ++x) {
    std::string here = x == 0 ? "v" : col_id("b", x);
    std::string up = x == 0 ? "s" : col_id("s", x);
    if (x < n) g.add_edge(here, col_id("b", x + 1));
    g.add_edge(here, up);
  }
  g.add_edge("s", "s", 1.0);
  for (std::uint32_t x = 1; x <= n; ++x) {
    std::string left = x == 1 ? "s" : col_id("s", x - 1);
    g.add_edge(col_id("s", x), col_id("d", x), 0.5);
    g.add_edge(col_id("s", x), left, 0.5);
  }
  for (std::uint32_t x = 1; x <= n; ++x) {
    std::string left = x == 1 ? "uprime" : col_id("d", x - 1);
    g.add_edge(col_id("d", x), left, 1.0);
  }
  g.add_edge("uprime", "uprime", 1.0);

  out.targets = {"uprime"};
  return out;
}

Fig1NoMin build_fig1_no_min_optimal(std::uint32_t n) {
  require_truncation(n);
  Fig1NoMin out;
  Game& g = out.game;

  g.add_vertex("u", Owner::kMin, 0.0);
  g.add_vertex("t", Owner::kChance, 0.0);
  g.add_vertex("p", Owner::kChance, 0.0);
  for (std::uint32_t x = 1; x <= n; ++x) {
    g.add_vertex(col_id("t", x), Owner::kChance, 0.0);
    g.add_vertex(col_id("p", x), Owner::kChance, 0.0);
  }
  g.add_edge("u", "t");
  for (std::uint32_t x = 1; x <= n; ++x) g.add_edge("u", col_id("t", x));
  g.add_edge("t", "t", 1.0);
  for (std::uint32_t x = 1; x <= n; ++x) {
    std::string left = x == 1 ? "t" : col_id("t", x - 1);
    g.add_edge(col_id("t", x), col_id("p", x), 0.5);
    g.add_edge(col_id("t", x), left, 0.5);
  }
  // Single pass: a failed escape drains into the absorbing sink p instead of
  // looping back, so Val(u) = min_k 2^-k = 2^-N at truncation N.
  for (std::uint32_t x = 1; x <= n; ++x) {
    std::string left = x == 1 ? "p" : col_id("p", x - 1);
    g.add_edge(col_id("p", x), left, 1.0);
  }
  g.add_edge("p", "p", 1.0);

  out.targets = {"t"};
  return out;
}

Fig2 build_fig2(std::uint32_t n) {
  require_truncation(n);
  if (n >= 1024) {
    throw std::invalid_argument("branch reward 2^n overflows the reward range");
  }
  Fig2 out;
  Game& g = out.game;
  g.add_vertex("v", Owner::kMax, 0.0);
  for (std::uint32_t i = 1; i <= n; ++i) {
    g.add_vertex(col_id("q", i), Owner::kMax,
                 std::ldexp(1.0, static_cast<int>(i)));
  }
  g.add_vertex("t", Owner::kMax, 0.0);
  for (std::uint32_t i = 1; i <= n; ++i) {
    g.add_edge("v", col_id("q", i));
    g.add_edge(col_id("q", i), "t");
  }
  g.add_edge("t", "t");
  return out;
}

RestrictedValues fig1_restricted_values(std::uint32_t n, std::uint32_t max_j,
                                        std::uint32_t max_k) {
  RestrictedValues out;
  out.sup_inf = 0.0;
  for (std::uint32_t j = 0; j <= max_j; ++j) {
    double inner = 1.0;
    for (std::uint32_t k = 0; k <= n; ++k) {
      inner = std::min(inner, fig1_md_value(j, k));
    }
    out.sup_inf = std::max(out.sup_inf, inner);
  }
  out.inf_sup = 1.0;
  for (std::uint32_t k = 0; k <= max_k; ++k) {
    double inner = 0.0;
    for (std::uint32_t j = 0; j <= n; ++j) {
      inner = std::max(inner, fig1_md_value(j, k));
    }
    out.inf_sup = std::min(out.inf_sup, inner);
  }
  return out;
}

}  // namespace tgs
