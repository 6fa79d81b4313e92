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

#ifndef TGSOLVE_KERNELS_HPP_
#define TGSOLVE_KERNELS_HPP_

#include <cstdint>
#include <vector>

#include "tgsolve/game.hpp"

namespace tgs {

// CSR pack of a game for the sweep kernels: one flattened successor/weight
// array with per-vertex offsets. Player rows carry weight 1.0 (unused).
struct PackedGame {
  std::size_t num_vertices = 0;
  std::vector<std::uint8_t> owners;
  std::vector<double> rewards;
  std::vector<std::uint32_t> offsets;  // size num_vertices + 1
  std::vector<std::uint32_t> succ;
  std::vector<double> prob;
};

PackedGame pack(const Game& game);

// One application of the one-step value operator over all vertices:
//   y[v] = reward[v] + discount * reduce(x over successors of v)
// where reduce is max (Max vertices), min (Min vertices) or the
// probability-weighted sum (chance vertices). discount = 1 gives the
// undiscounted operator. x may contain +inf; weights are positive so the
// arithmetic never produces NaN and +inf stays absorbing.
using SweepFn = void (*)(const PackedGame&, const double* x, double* y,
                         double discount);

void sweep_scalar(const PackedGame& pg, const double* x, double* y,
                  double discount);
#if defined(TGSOLVE_BUILD_AVX2)
void sweep_avx2(const PackedGame& pg, const double* x, double* y,
                double discount);
#endif

enum class Kernel { kAuto, kScalar, kAvx2 };

bool avx2_available();

// kAuto resolves to the fastest kernel the CPU supports. Requesting an
// unavailable kernel explicitly throws.
Kernel resolve_kernel(Kernel k);
SweepFn sweep_fn(Kernel k);
const char* kernel_name(Kernel k);

}  // namespace tgs

#endif  // TGSOLVE_KERNELS_HPP_
