/*
   Copyright 2026 the wpsched authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// AVX2 kernel variants. Compiled with -mavx2 only in this translation unit;
// callers reach these through the runtime dispatch table. The loops mirror
// the scalar reference op-for-op (mul, add, div, max in the same order, no
// FMA) so results are bit-identical.

#include <immintrin.h>

#include <algorithm>
#include <cstddef>

namespace wpsched::kernels::avx2 {

bool available() { return __builtin_cpu_supports("avx2") != 0; }

void axpy_minus(double* dst, const double* src, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_loadu_pd(dst + i);
    __m256d s = _mm256_loadu_pd(src + i);
    d = _mm256_sub_pd(d, _mm256_mul_pd(va, s));
    _mm256_storeu_pd(dst + i, d);
  }
  for (; i < n; ++i) dst[i] -= a * src[i];
}

void idle_shortfall(double* out, const double* g, std::size_t n,
                    double t_assign, double battery, double harvest,
                    double consume_power) {
  const __m256d vt = _mm256_set1_pd(t_assign);
  const __m256d vb = _mm256_set1_pd(battery);
  const __m256d vh = _mm256_set1_pd(harvest);
  const __m256d vp = _mm256_set1_pd(consume_power);
  const __m256d vz = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vg = _mm256_loadu_pd(g + i);
    __m256d avail = _mm256_div_pd(_mm256_add_pd(vb, _mm256_mul_pd(vh, vg)), vp);
    __m256d y = _mm256_max_pd(vz, _mm256_sub_pd(vt, avail));
    _mm256_storeu_pd(out + i, y);
  }
  for (; i < n; ++i)
    out[i] = std::max(0.0, t_assign - (battery + harvest * g[i]) / consume_power);
}

void scale_clamp01(double* x, std::size_t n, double scale) {
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d v0 = _mm256_setzero_pd();
  const __m256d v1 = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    v = _mm256_min_pd(v1, _mm256_max_pd(v0, _mm256_mul_pd(v, vs)));
    _mm256_storeu_pd(x + i, v);
  }
  for (; i < n; ++i) x[i] = std::min(1.0, std::max(0.0, x[i] * scale));
}

}  // namespace wpsched::kernels::avx2
