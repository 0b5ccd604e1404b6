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

#include <random>

#include "wpsched/model.hpp"

using namespace wpsched;

namespace {

ProblemInstance paper_defaults() {
  ProblemInstance inst = ProblemInstance::defaults(5);
  // defaults(): P=0.25 W effective, P_c=0.05 W, eta=0.4, cap=0.1 J
  return inst;
}

}  // namespace

TEST_CASE("harvested energy formula") {
  ProblemInstance inst = paper_defaults();
  CHECK(harvested_energy(inst, 0.0, 0.5) == 0.0);
  CHECK(harvested_energy(inst, 1.0, 1.0) == doctest::Approx(0.1).epsilon(1e-12));
  // Per-slot harvest at the balanced schedule: 0.4 * 0.25 * 0.5 / 6 J.
  CHECK(harvested_energy(inst, 0.5, 1.0 / 6.0) ==
        doctest::Approx(0.008333333333).epsilon(1e-9));
}

TEST_CASE("harvested energy rejects bad domain") {
  ProblemInstance inst = paper_defaults();
  CHECK_THROWS_AS(harvested_energy(inst, -0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(harvested_energy(inst, 1.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(harvested_energy(inst, 0.5, -1e-9), std::invalid_argument);
}

TEST_CASE("harvested energy is linear in gain and tau") {
  ProblemInstance inst = paper_defaults();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double g = unit(rng);
    const double tau = unit(rng);
    const double c = unit(rng);
    const double base = harvested_energy(inst, g, tau);
    CHECK(harvested_energy(inst, c * g, tau) ==
          doctest::Approx(c * base).epsilon(1e-12));
    CHECK(harvested_energy(inst, g, c * tau) ==
          doctest::Approx(c * base).epsilon(1e-12));
  }
}

TEST_CASE("instance validation") {
  ProblemInstance inst = paper_defaults();
  CHECK_NOTHROW(inst.validate());
  SUBCASE("efficiency out of range") {
    inst.efficiency = 0.0;
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
    inst.efficiency = 1.5;
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  }
  SUBCASE("battery above cap") {
    inst.battery_init[2] = 0.2;
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  }
  SUBCASE("negative penalty") {
    inst.penalties[0] = -1.0;
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  }
}

TEST_CASE("schedule time-budget invariant") {
  CHECK_NOTHROW(Schedule::checked(0.5, {0.1, 0.1, 0.3}));
  CHECK_THROWS_AS(Schedule::checked(0.5, {0.1, 0.1, 0.3 + 1e-7}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Schedule::checked(-0.1, {0.55, 0.55}), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::checked(0.5, {0.6, -0.1}), std::invalid_argument);

  // Property: random vectors either close the budget or get rejected.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> t(4);
    double sum = 0.0;
    for (double& x : t) {
      x = unit(rng) / 4.0;
      sum += x;
    }
    const double tau = 1.0 - sum;
    if (tau >= 0.0) {
      const Schedule s = Schedule::checked(tau, t);
      CHECK(s.min_sample_time() ==
            doctest::Approx(*std::min_element(t.begin(), t.end())));
    }
    CHECK_THROWS_AS(Schedule::checked(tau + 1e-6, t), std::invalid_argument);
  }
}

TEST_CASE("scenario shape and range checks") {
  Scenario s = Scenario::constant(3, 2, 0.5);
  CHECK(s.at(2, 1) == 0.5);
  s.at(1, 0) = 1.5;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK_THROWS_AS(Scenario::constant(0, 1, 0.5), std::invalid_argument);
}
