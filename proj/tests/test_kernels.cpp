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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "support/test_support.hpp"
#include "tgsolve/kernels.hpp"

using namespace tgs;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n,
                                  double inf_fraction) {
  std::uniform_real_distribution<double> val(0.0, 100.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<double> x(n);
  for (double& e : x) {
    e = coin(rng) < inf_fraction ? std::numeric_limits<double>::infinity()
                                 : val(rng);
  }
  return x;
}

// Dense successor lists exercise the vector path (> 4 lanes).
Game wide_random_game(std::mt19937_64& rng) {
  test::RandomGameOptions opts;
  opts.min_vertices = 8;
  opts.max_vertices = 24;
  opts.max_succ = 11;
  return test::random_game(rng, opts);
}

}  // namespace

TEST_CASE("scalar sweep matches a straightforward reduction") {
  Game g;
  g.add_vertex("m", Owner::kMax, 1.0);
  g.add_vertex("n", Owner::kMin, 0.5);
  g.add_vertex("c", Owner::kChance, 0.0);
  g.add_edge("m", "n");
  g.add_edge("m", "c");
  g.add_edge("n", "m");
  g.add_edge("n", "c");
  g.add_edge("c", "m", 0.25);
  g.add_edge("c", "n", 0.75);
  PackedGame pg = pack(g);
  std::vector<double> x = {2.0, 4.0, 8.0}, y(3);
  sweep_scalar(pg, x.data(), y.data(), 1.0);
  CHECK(y[0] == 1.0 + 8.0);
  CHECK(y[1] == 0.5 + 2.0);
  CHECK(y[2] == doctest::Approx(0.25 * 2.0 + 0.75 * 4.0).epsilon(1e-15));
  sweep_scalar(pg, x.data(), y.data(), 0.5);
  CHECK(y[0] == 1.0 + 0.5 * 8.0);
}

TEST_CASE("infinity is absorbing through the sweep") {
  Game g;
  g.add_vertex("c", Owner::kChance, 0.0);
  g.add_vertex("a", Owner::kChance, 0.0);
  g.add_vertex("b", Owner::kChance, 0.0);
  g.add_edge("c", "a", 0.5);
  g.add_edge("c", "b", 0.5);
  g.add_edge("a", "a", 1.0);
  g.add_edge("b", "b", 1.0);
  PackedGame pg = pack(g);
  std::vector<double> x = {0.0, 2.0, std::numeric_limits<double>::infinity()};
  std::vector<double> y(3);
  sweep_scalar(pg, x.data(), y.data(), 1.0);
  CHECK(std::isinf(y[0]));
  CHECK(!std::isnan(y[0]));
}

TEST_CASE("avx2 kernel is equivalent to the scalar reference") {
  if (!avx2_available()) {
    MESSAGE("avx2 not available; dispatch falls back to scalar");
    CHECK(sweep_fn(Kernel::kAuto) == &sweep_scalar);
    return;
  }
  SweepFn simd = sweep_fn(Kernel::kAvx2);
  REQUIRE(simd != &sweep_scalar);

  std::mt19937_64 rng(99);
  for (int round = 0; round < 200; ++round) {
    Game g = wide_random_game(rng);
    PackedGame pg = pack(g);
    std::vector<double> x = random_vector(rng, g.size(), round % 3 ? 0.0 : 0.1);
    std::vector<double> ys(g.size()), yv(g.size());
    double discount = round % 2 ? 1.0 : 0.9;
    sweep_scalar(pg, x.data(), ys.data(), discount);
    simd(pg, x.data(), yv.data(), discount);
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      if (g.owner(v) != Owner::kChance) {
        // max/min reductions are exact in both kernels.
        CHECK(ys[v] == yv[v]);
      } else if (std::isinf(ys[v])) {
        CHECK(std::isinf(yv[v]));
      } else {
        double scale = std::max({1.0, std::abs(ys[v]), std::abs(yv[v])});
        CHECK(std::abs(ys[v] - yv[v]) <= 1e-13 * scale);
      }
    }
  }
}

TEST_CASE("kernel dispatch") {
  CHECK(kernel_name(Kernel::kScalar) == std::string("scalar"));
  if (avx2_available()) {
    CHECK(resolve_kernel(Kernel::kAuto) == Kernel::kAvx2);
    CHECK(kernel_name(Kernel::kAuto) == std::string("avx2"));
  } else {
    CHECK(resolve_kernel(Kernel::kAuto) == Kernel::kScalar);
    CHECK_THROWS_AS(sweep_fn(Kernel::kAvx2), std::invalid_argument);
  }
}
