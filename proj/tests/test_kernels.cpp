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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "wpsched/kernels.hpp"

namespace k = wpsched::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo,
                               double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar axpy_minus reference semantics") {
  k::force_set("scalar");
  std::vector<double> dst{1.0, 2.0, 3.0};
  const std::vector<double> src{0.5, 0.25, -1.0};
  k::axpy_minus(dst.data(), src.data(), 2.0, dst.size());
  CHECK(dst[0] == doctest::Approx(0.0));
  CHECK(dst[1] == doctest::Approx(1.5));
  CHECK(dst[2] == doctest::Approx(5.0));
}

TEST_CASE("scalar idle_shortfall clamps at zero") {
  k::force_set("scalar");
  const std::vector<double> g{0.0, 0.5, 1.0};
  std::vector<double> out(3);
  // t=0.2, battery=0, harvest=0.02, pc=0.05: y = max(0, 0.2 - 0.4 g)
  k::idle_shortfall(out.data(), g.data(), 3, 0.2, 0.0, 0.02, 0.05);
  CHECK(out[0] == doctest::Approx(0.2));
  CHECK(out[1] == doctest::Approx(0.0));
  CHECK(out[2] == doctest::Approx(0.0));
}

TEST_CASE("scalar scale_clamp01") {
  k::force_set("scalar");
  std::vector<double> x{-0.5, 0.25, 3.0};
  k::scale_clamp01(x.data(), x.size(), 2.0);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 0.5);
  CHECK(x[2] == 1.0);
}

TEST_CASE("avx2 variants are bit-identical to scalar") {
  bool have_avx2 = true;
  try {
    k::force_set("avx2");
  } catch (const std::invalid_argument&) {
    have_avx2 = false;
  }
  if (!have_avx2) {
    MESSAGE("avx2 unavailable on this host; dispatch equivalence skipped");
    k::force_set("scalar");
    return;
  }

  std::mt19937_64 rng(0xfeedbeef);
  // Odd lengths exercise the scalar tails.
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 257u, 1000u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto src = random_vec(rng, n, -3.0, 3.0);
      const auto base = random_vec(rng, n, -3.0, 3.0);
      const double a = random_vec(rng, 1, -2.0, 2.0)[0];

      auto d_scalar = base;
      auto d_avx = base;
      k::force_set("scalar");
      k::axpy_minus(d_scalar.data(), src.data(), a, n);
      k::force_set("avx2");
      k::axpy_minus(d_avx.data(), src.data(), a, n);
      REQUIRE(bitwise_equal(d_scalar, d_avx));

      const auto gains = random_vec(rng, n, 0.0, 1.0);
      std::vector<double> y_scalar(n), y_avx(n);
      k::force_set("scalar");
      k::idle_shortfall(y_scalar.data(), gains.data(), n, 0.17, 0.01, 0.025, 0.05);
      k::force_set("avx2");
      k::idle_shortfall(y_avx.data(), gains.data(), n, 0.17, 0.01, 0.025, 0.05);
      REQUIRE(bitwise_equal(y_scalar, y_avx));

      auto c_scalar = random_vec(rng, n, -1.0, 6.0);
      auto c_avx = c_scalar;
      k::force_set("scalar");
      k::scale_clamp01(c_scalar.data(), n, 0.3);
      k::force_set("avx2");
      k::scale_clamp01(c_avx.data(), n, 0.3);
      REQUIRE(bitwise_equal(c_scalar, c_avx));
    }
  }
  k::force_set("scalar");
}

TEST_CASE("force_set rejects unknown names") {
  CHECK_THROWS_AS(k::force_set("sse9"), std::invalid_argument);
}
