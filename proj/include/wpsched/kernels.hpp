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

#pragma once

#include <cstddef>
#include <string>

namespace wpsched::kernels {

// Data-parallel inner loops shared by the simplex tableau, the recourse
// evaluators and the channel-gain normalizer. Every kernel has a scalar
// reference implementation and an AVX2 variant; the active set is picked
// once at startup from CPUID (override with WPSCHED_KERNELS=scalar|avx2).
// Variants are bit-for-bit equivalent: elementwise only, no FMA, same
// per-element operation order, scalar tail.

// dst[i] -= a * src[i]
void axpy_minus(double* dst, const double* src, double a, std::size_t n);

// out[i] = max(0, t_assign - (battery + harvest * g[i]) / consume_power)
void idle_shortfall(double* out, const double* g, std::size_t n,
                    double t_assign, double battery, double harvest,
                    double consume_power);

// x[i] = min(1, max(0, x[i] * scale))
void scale_clamp01(double* x, std::size_t n, double scale);

// Name of the dispatched variant set: "avx2" or "scalar".
const std::string& active_set();

// Force a variant set by name (test hook). Throws std::invalid_argument on
// an unknown or unavailable name.
void force_set(const std::string& name);

}  // namespace wpsched::kernels
