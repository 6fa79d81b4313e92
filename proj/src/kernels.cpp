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

#include "tgsolve/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgs {

PackedGame pack(const Game& game) {
  PackedGame pg;
  pg.num_vertices = game.size();
  pg.owners.resize(pg.num_vertices);
  pg.rewards.resize(pg.num_vertices);
  pg.offsets.resize(pg.num_vertices + 1, 0);
  std::size_t edges = 0;
  for (std::uint32_t v = 0; v < pg.num_vertices; ++v) {
    edges += game.successors(v).size();
  }
  pg.succ.reserve(edges);
  pg.prob.reserve(edges);
  for (std::uint32_t v = 0; v < pg.num_vertices; ++v) {
    pg.owners[v] = static_cast<std::uint8_t>(game.owner(v));
    pg.rewards[v] = game.reward(v);
    pg.offsets[v] = static_cast<std::uint32_t>(pg.succ.size());
    auto succ = game.successors(v);
    auto dist = game.chance_dist(v);
    for (std::size_t k = 0; k < succ.size(); ++k) {
      pg.succ.push_back(succ[k]);
      pg.prob.push_back(game.owner(v) == Owner::kChance ? dist[k] : 1.0);
    }
  }
  pg.offsets[pg.num_vertices] = static_cast<std::uint32_t>(pg.succ.size());
  return pg;
}

void sweep_scalar(const PackedGame& pg, const double* x, double* y,
                  double discount) {
  const std::uint32_t* succ = pg.succ.data();
  const double* prob = pg.prob.data();
  for (std::size_t v = 0; v < pg.num_vertices; ++v) {
    const std::uint32_t begin = pg.offsets[v];
    const std::uint32_t end = pg.offsets[v + 1];
    double red = 0.0;
    if (begin != end) {
      switch (static_cast<Owner>(pg.owners[v])) {
        case Owner::kMax: {
          red = x[succ[begin]];
          for (std::uint32_t k = begin + 1; k < end; ++k) {
            red = std::max(red, x[succ[k]]);
          }
          break;
        }
        case Owner::kMin: {
          red = x[succ[begin]];
          for (std::uint32_t k = begin + 1; k < end; ++k) {
            red = std::min(red, x[succ[k]]);
          }
          break;
        }
        case Owner::kChance: {
          for (std::uint32_t k = begin; k < end; ++k) {
            red += prob[k] * x[succ[k]];
          }
          break;
        }
      }
    }
    y[v] = pg.rewards[v] + discount * red;
  }
}

bool avx2_available() {
#if defined(TGSOLVE_BUILD_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Kernel resolve_kernel(Kernel k) {
  if (k == Kernel::kAuto) {
    return avx2_available() ? Kernel::kAvx2 : Kernel::kScalar;
  }
  if (k == Kernel::kAvx2 && !avx2_available()) {
    throw std::invalid_argument("avx2 kernel is not available on this CPU");
  }
  return k;
}

SweepFn sweep_fn(Kernel k) {
  switch (resolve_kernel(k)) {
    case Kernel::kScalar:
      return &sweep_scalar;
    case Kernel::kAvx2:
#if defined(TGSOLVE_BUILD_AVX2)
      return &sweep_avx2;
#else
      break;
#endif
    case Kernel::kAuto:
      break;
  }
  return &sweep_scalar;
}

const char* kernel_name(Kernel k) {
  switch (resolve_kernel(k)) {
    case Kernel::kScalar:
      return "scalar";
    case Kernel::kAvx2:
      return "avx2";
    case Kernel::kAuto:
      break;
  }
  return "scalar";
}

}  // namespace tgs
