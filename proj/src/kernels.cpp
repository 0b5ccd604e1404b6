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

#include "wpsched/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace wpsched::kernels {

namespace scalar {

void axpy_minus(double* dst, const double* src, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] -= a * src[i];
}

void idle_shortfall(double* out, const double* g, std::size_t n,
                    double t_assign, double battery, double harvest,
                    double consume_power) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::max(0.0, t_assign - (battery + harvest * g[i]) / consume_power);
}

void scale_clamp01(double* x, std::size_t n, double scale) {
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::min(1.0, std::max(0.0, x[i] * scale));
}

}  // namespace scalar

#ifdef WPSCHED_HAVE_AVX2
namespace avx2 {
void axpy_minus(double* dst, const double* src, double a, std::size_t n);
void idle_shortfall(double* out, const double* g, std::size_t n,
                    double t_assign, double battery, double harvest,
                    double consume_power);
void scale_clamp01(double* x, std::size_t n, double scale);
bool available();
}  // namespace avx2
#endif

namespace {

struct Table {
  void (*axpy_minus)(double*, const double*, double, std::size_t);
  void (*idle_shortfall)(double*, const double*, std::size_t, double, double,
                         double, double);
  void (*scale_clamp01)(double*, std::size_t, double);
  std::string name;
};

Table make_scalar() {
  return {&scalar::axpy_minus, &scalar::idle_shortfall, &scalar::scale_clamp01,
          "scalar"};
}

#ifdef WPSCHED_HAVE_AVX2
Table make_avx2() {
  return {&avx2::axpy_minus, &avx2::idle_shortfall, &avx2::scale_clamp01,
          "avx2"};
}
#endif

bool avx2_available() {
#ifdef WPSCHED_HAVE_AVX2
  return avx2::available();
#else
  return false;
#endif
}

Table select_initial() {
  if (const char* env = std::getenv("WPSCHED_KERNELS")) {
    std::string want(env);
#ifdef WPSCHED_HAVE_AVX2
    if (want == "avx2" && avx2_available()) return make_avx2();
#endif
    if (want == "scalar") return make_scalar();
    // Unknown or unavailable request falls through to auto-detection.
  }
#ifdef WPSCHED_HAVE_AVX2
  if (avx2_available()) return make_avx2();
#endif
  return make_scalar();
}

Table& table() {
  static Table t = select_initial();
  return t;
}

}  // namespace

void axpy_minus(double* dst, const double* src, double a, std::size_t n) {
  table().axpy_minus(dst, src, a, n);
}

void idle_shortfall(double* out, const double* g, std::size_t n,
                    double t_assign, double battery, double harvest,
                    double consume_power) {
  table().idle_shortfall(out, g, n, t_assign, battery, harvest, consume_power);
}

void scale_clamp01(double* x, std::size_t n, double scale) {
  table().scale_clamp01(x, n, scale);
}

const std::string& active_set() { return table().name; }

void force_set(const std::string& name) {
  if (name == "scalar") {
    table() = make_scalar();
    return;
  }
#ifdef WPSCHED_HAVE_AVX2
  if (name == "avx2" && avx2_available()) {
    table() = make_avx2();
    return;
  }
#endif
  throw std::invalid_argument("unknown or unavailable kernel set: " + name);
}

}  // namespace wpsched::kernels
