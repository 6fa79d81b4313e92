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

// AVX2 variant of the sweep kernel. Compiled with -mavx2 and selected at
// runtime; see kernels.cpp for dispatch. max/min reductions are bit-identical
// to the scalar kernel; the weighted sum uses a 4-lane blocked order, so
// chance rows may differ from the scalar kernel by a few ulps (the
// equivalence tests pin that tolerance).

#include "tgsolve/kernels.hpp"

#if defined(TGSOLVE_BUILD_AVX2)

#include <immintrin.h>

#include <algorithm>

namespace tgs {
namespace {

inline __m256d gather4(const double* x, const std::uint32_t* idx) {
  __m128i vindex = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
  return _mm256_i32gather_pd(x, vindex, 8);
}

inline double hmax(__m256d a) {
  __m128d lo = _mm256_castpd256_pd128(a);
  __m128d hi = _mm256_extractf128_pd(a, 1);
  __m128d m = _mm_max_pd(lo, hi);
  m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
  return _mm_cvtsd_f64(m);
}

inline double hmin(__m256d a) {
  __m128d lo = _mm256_castpd256_pd128(a);
  __m128d hi = _mm256_extractf128_pd(a, 1);
  __m128d m = _mm_min_pd(lo, hi);
  m = _mm_min_sd(m, _mm_unpackhi_pd(m, m));
  return _mm_cvtsd_f64(m);
}

inline double hsum(__m256d a) {
  __m128d lo = _mm256_castpd256_pd128(a);
  __m128d hi = _mm256_extractf128_pd(a, 1);
  __m128d s = _mm_add_pd(lo, hi);  // (a0+a2, a1+a3)
  s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
  return _mm_cvtsd_f64(s);
}

}  // namespace

void sweep_avx2(const PackedGame& pg, const double* x, double* y,
                double discount) {
  const std::uint32_t* succ = pg.succ.data();
  const double* prob = pg.prob.data();
  for (std::size_t v = 0; v < pg.num_vertices; ++v) {
    const std::uint32_t begin = pg.offsets[v];
    const std::uint32_t end = pg.offsets[v + 1];
    const std::uint32_t len = end - begin;
    double red = 0.0;
    if (len != 0) {
      switch (static_cast<Owner>(pg.owners[v])) {
        case Owner::kMax: {
          if (len >= 4) {
            __m256d acc = gather4(x, succ + begin);
            std::uint32_t k = begin + 4;
            for (; k + 4 <= end; k += 4) {
              acc = _mm256_max_pd(acc, gather4(x, succ + k));
            }
            red = hmax(acc);
            for (; k < end; ++k) red = std::max(red, x[succ[k]]);
          } else {
            red = x[succ[begin]];
            for (std::uint32_t k = begin + 1; k < end; ++k) {
              red = std::max(red, x[succ[k]]);
            }
          }
          break;
        }
        case Owner::kMin: {
          if (len >= 4) {
            __m256d acc = gather4(x, succ + begin);
            std::uint32_t k = begin + 4;
            for (; k + 4 <= end; k += 4) {
              acc = _mm256_min_pd(acc, gather4(x, succ + k));
            }
            red = hmin(acc);
            for (; k < end; ++k) red = std::min(red, x[succ[k]]);
          } else {
            red = x[succ[begin]];
            for (std::uint32_t k = begin + 1; k < end; ++k) {
              red = std::min(red, x[succ[k]]);
            }
          }
          break;
        }
        case Owner::kChance: {
          if (len >= 4) {
            __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(prob + begin),
                                        gather4(x, succ + begin));
            std::uint32_t k = begin + 4;
            for (; k + 4 <= end; k += 4) {
              acc = _mm256_add_pd(
                  acc, _mm256_mul_pd(_mm256_loadu_pd(prob + k),
                                     gather4(x, succ + k)));
            }
            red = hsum(acc);
            for (; k < end; ++k) red += prob[k] * x[succ[k]];
          } else {
            for (std::uint32_t k = begin; k < end; ++k) {
              red += prob[k] * x[succ[k]];
            }
          }
          break;
        }
      }
    }
    y[v] = pg.rewards[v] + discount * red;
  }
}

}  // namespace tgs

#endif  // TGSOLVE_BUILD_AVX2
