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

#include "wpsched/recourse.hpp"

using namespace wpsched;
using recourse::recourse_multi;
using recourse::recourse_single;

namespace {

ProblemInstance defaults5() { return ProblemInstance::defaults(5); }

Schedule balance_schedule() {
  // tau = T_i = 1/6 balances the default instance at gain 0.5.
  return Schedule::checked(1.0 / 6.0, std::vector<double>(5, 1.0 / 6.0));
}

ProblemInstance random_instance(std::mt19937_64& rng, std::size_t max_nodes) {
  std::uniform_int_distribution<std::size_t> nodes(1, max_nodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProblemInstance inst = ProblemInstance::defaults(nodes(rng));
  inst.hap_power = 0.1 + 0.4 * unit(rng);
  inst.consume_power = 0.01 + 0.09 * unit(rng);
  inst.efficiency = 0.05 + 0.95 * unit(rng);
  inst.battery_cap = 0.005 + 0.2 * unit(rng);
  for (double& b : inst.battery_init) b = inst.battery_cap * unit(rng);
  for (double& w : inst.penalties) w = 2.0 * unit(rng);
  return inst;
}

Schedule random_schedule(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> cuts(n + 1);
  for (double& c : cuts) c = unit(rng);
  double sum = 0.0;
  for (double c : cuts) sum += c;
  std::vector<double> t(n);
  double total_t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = cuts[i + 1] / sum;
    total_t += t[i];
  }
  return Schedule::checked(1.0 - total_t, std::move(t));
}

Scenario random_scenario(std::mt19937_64& rng, std::size_t n,
                         std::size_t horizon) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Scenario s;
  s.n_nodes = n;
  s.horizon = horizon;
  s.gains.resize(n * horizon);
  for (double& g : s.gains) g = unit(rng);
  return s;
}

}  // namespace

TEST_CASE("single-slot closed form") {
  const ProblemInstance inst = defaults5();
  const Schedule sched = balance_schedule();

  SUBCASE("exact balance: 8.333 mJ harvested = 8.333 mJ consumed") {
    const auto out = recourse_single(inst, sched, Scenario::constant(5, 1, 0.5));
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(out.idle(i, 0) == doctest::Approx(0.0).scale(1.0));
    CHECK(out.penalty == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("no energy: nodes idle their whole assignment") {
    const auto out = recourse_single(inst, sched, Scenario::constant(5, 1, 0.0));
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(out.idle(i, 0) == doctest::Approx(1.0 / 6.0));
    CHECK(out.penalty == doctest::Approx(5.0 / 6.0));
  }
  SUBCASE("half the design gain: shortfall 4.167 mJ over 0.05 W") {
    const auto out = recourse_single(inst, sched, Scenario::constant(5, 1, 0.25));
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(out.idle(i, 0) == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
  }
}

TEST_CASE("multi-slot recursion hand cases") {
  const ProblemInstance inst = defaults5();

  SUBCASE("abundant energy saturates the battery, spill appears in slot 2") {
    const Schedule tiny = Schedule::checked(0.9, std::vector<double>(5, 0.02));
    const auto out = recourse_multi(inst, tiny, Scenario::constant(5, 2, 1.0));
    // Per slot: harvest 0.4*0.25*0.9 = 0.09 J, consume 0.001 J.
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(out.idle(i, 0) == 0.0);
      CHECK(out.idle(i, 1) == 0.0);
      CHECK(out.battery(i, 0) == doctest::Approx(0.089));
      CHECK(out.spill(i, 0) == 0.0);
      CHECK(out.battery(i, 1) == doctest::Approx(inst.battery_cap));
      CHECK(out.spill(i, 1) == doctest::Approx(0.089 + 0.09 - 0.001 - 0.1));
    }
  }
  SUBCASE("g = (0, 1): slot-1 idle is full, slot-2 idle follows the update") {
    const Schedule sched = balance_schedule();
    Scenario scen = Scenario::constant(5, 2, 0.0);
    for (std::size_t i = 0; i < 5; ++i) scen.at(i, 1) = 1.0;
    const auto out = recourse_multi(inst, sched, scen);
    const double harvest_full =
        inst.efficiency * inst.hap_power * sched.tau;  // eta P tau
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(out.idle(i, 0) == doctest::Approx(1.0 / 6.0));
      const double expect =
          std::max(0.0, 1.0 / 6.0 - harvest_full / inst.consume_power);
      CHECK(out.idle(i, 1) == doctest::Approx(expect));
    }
  }
  SUBCASE("horizon 1 reduces exactly to recourse_single") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 100; ++rep) {
      const ProblemInstance ri = random_instance(rng, 4);
      const Schedule rs = random_schedule(rng, ri.n_nodes);
      const Scenario sc = random_scenario(rng, ri.n_nodes, 1);
      const auto a = recourse_single(ri, rs, sc);
      const auto b = recourse_multi(ri, rs, sc);
      CHECK(a.idle_times == b.idle_times);
      CHECK(a.battery_trace == b.battery_trace);
      CHECK(a.spill_trace == b.spill_trace);
      CHECK(a.penalty == b.penalty);
    }
  }
}

TEST_CASE("surplus energy examples") {
  const ProblemInstance inst = defaults5();
  SUBCASE("balance gives zero surplus") {
    const auto s = recourse::surplus_energy(inst, balance_schedule(),
                                            Scenario::constant(5, 1, 0.5));
    for (double v : s) CHECK(v == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("hand arithmetic, positive and negative") {
    const Schedule sched = Schedule::checked(0.5, std::vector<double>(5, 0.1));
    const auto hi = recourse::surplus_energy(inst, sched,
                                             Scenario::constant(5, 1, 1.0));
    for (double v : hi) CHECK(v == doctest::Approx(0.045));
    const auto lo = recourse::surplus_energy(inst, sched,
                                             Scenario::constant(5, 1, 0.0));
    for (double v : lo) CHECK(v == doctest::Approx(-0.005));
  }
}

TEST_CASE("monotonicity properties") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 400; ++rep) {
    const ProblemInstance inst = random_instance(rng, 4);
    const std::size_t n = inst.n_nodes;
    Schedule sched = random_schedule(rng, n);
    const Scenario scen = random_scenario(rng, n, 3);

    const double base = recourse_multi(inst, sched, scen).penalty;

    // Nonincreasing in tau with T fixed (budget deliberately not re-closed;
    // the evaluator itself has no budget precondition).
    Schedule more_tau = sched;
    more_tau.tau += 0.2 * unit(rng);
    CHECK(recourse_multi(inst, more_tau, scen).penalty <= base + 1e-12);

    // Nonincreasing in every gain entry.
    Scenario better = scen;
    for (double& g : better.gains) g = std::min(1.0, g + unit(rng) * (1.0 - g));
    CHECK(recourse_multi(inst, sched, better).penalty <= base + 1e-12);

    // Nondecreasing in every T_i.
    Schedule longer = sched;
    for (double& t : longer.sample_times) t += 0.1 * unit(rng);
    CHECK(recourse_multi(inst, longer, scen).penalty >= base - 1e-12);
  }
}

TEST_CASE("trace invariants and per-slot energy conservation") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 2000; ++rep) {
    const ProblemInstance inst = random_instance(rng, 5);
    const std::size_t n = inst.n_nodes;
    const std::size_t horizon = 1 + rep % 4;
    const Schedule sched = random_schedule(rng, n);
    const Scenario scen = random_scenario(rng, n, horizon);
    const auto out = recourse_multi(inst, sched, scen);

    for (std::size_t t = 0; t < horizon; ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        const double y = out.idle(i, t);
        CHECK(y >= 0.0);
        CHECK(y <= sched.sample_times[i] + 1e-9);
        CHECK(out.battery(i, t) >= 0.0);
        CHECK(out.battery(i, t) <= inst.battery_cap + 1e-15);
        CHECK(out.spill(i, t) >= 0.0);

        const double prev =
            t == 0 ? inst.battery_init[i] : out.battery(i, t - 1);
        const double harvested = harvested_energy(inst, scen.at(i, t), sched.tau);
        const double consumed =
            inst.consume_power * (sched.sample_times[i] - y);
        const double delta = out.battery(i, t) - prev;
        CHECK(std::abs(harvested - consumed - out.spill(i, t) - delta) < 1e-9);
      }
    }
  }
}
