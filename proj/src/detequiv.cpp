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

#include "wpsched/detequiv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wpsched::detequiv {

void ScenarioBundle::validate() const {
  if (scenarios.empty())
    throw std::invalid_argument("scenario bundle must be nonempty");
  for (const Scenario& s : scenarios) {
    s.validate();
    if (s.n_nodes != n_nodes() || s.horizon != horizon())
      throw std::invalid_argument("scenario bundle must have uniform shape");
  }
}

namespace {

std::vector<double> zero_row(std::size_t n) { return std::vector<double>(n, 0.0); }

void add_budget_and_z_rows(const ProblemInstance& inst, const VariableMap& map,
                           lp::LinearProgram& prog) {
  // tau + sum_i T_i = slot_seconds
  auto budget = zero_row(map.total());
  budget[map.tau()] = 1.0;
  for (std::size_t i = 0; i < inst.n_nodes; ++i) budget[map.sample_time(i)] = 1.0;
  prog.add_row(std::move(budget), lp::Relation::Equal, inst.slot_seconds);
  // Z <= T_i
  for (std::size_t i = 0; i < inst.n_nodes; ++i) {
    auto row = zero_row(map.total());
    row[map.z()] = 1.0;
    row[map.sample_time(i)] = -1.0;
    prog.add_row(std::move(row), lp::Relation::LessEq, 0.0);
  }
}

}  // namespace

DeterministicEquivalent build_single(const ProblemInstance& inst,
                                     const ScenarioBundle& bundle) {
  inst.validate();
  bundle.validate();
  if (bundle.horizon() != 1)
    throw std::invalid_argument("build_single needs horizon-1 scenarios");
  if (bundle.n_nodes() != inst.n_nodes)
    throw std::invalid_argument("build_single: node-count mismatch");

  const std::size_t n = inst.n_nodes;
  const std::size_t n_scen = bundle.size();

  DeterministicEquivalent de;
  de.map = VariableMap{n, n_scen, 1, false};
  const std::size_t n_vars = de.map.total();
  if (n_vars != 2 + n + n * n_scen)
    throw std::logic_error("build_single: variable-count bookkeeping broke");

  de.program.objective = zero_row(n_vars);
  de.program.objective[de.map.z()] = 1.0;
  const double inv_n = 1.0 / static_cast<double>(n_scen);
  for (std::size_t j = 0; j < n_scen; ++j)
    for (std::size_t i = 0; i < n; ++i)
      de.program.objective[de.map.y(j, 0, i)] = -inst.penalties[i] * inv_n;

  add_budget_and_z_rows(inst, de.map, de.program);

  // P_c y_i^j + B_i - P_c T_i + eta P g_i^j tau >= 0
  const double harvest = inst.efficiency * inst.hap_power;
  for (std::size_t j = 0; j < n_scen; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      auto row = zero_row(n_vars);
      row[de.map.y(j, 0, i)] = inst.consume_power;
      row[de.map.sample_time(i)] = -inst.consume_power;
      row[de.map.tau()] = harvest * bundle.scenarios[j].at(i, 0);
      de.program.add_row(std::move(row), lp::Relation::GreaterEq,
                         -inst.battery_init[i]);
    }
  }
  return de;
}

DeterministicEquivalent build_multi(const ProblemInstance& inst,
                                    const ScenarioBundle& bundle) {
  inst.validate();
  bundle.validate();
  if (bundle.n_nodes() != inst.n_nodes)
    throw std::invalid_argument("build_multi: node-count mismatch");

  const std::size_t n = inst.n_nodes;
  const std::size_t n_scen = bundle.size();
  const std::size_t horizon = bundle.horizon();

  DeterministicEquivalent de;
  de.map = VariableMap{n, n_scen, horizon, true};
  const std::size_t n_vars = de.map.total();
  if (n_vars != 2 + n + 3 * n * n_scen * horizon)
    throw std::logic_error("build_multi: variable-count bookkeeping broke");

  // (1/N) sum_s [ horizon * Z - sum_{t,i} y ]; the per-slot Z^ts all collapse
  // onto the one shared Z since their bounds do not involve scenario data.
  de.program.objective = zero_row(n_vars);
  de.program.objective[de.map.z()] = static_cast<double>(horizon);
  const double inv_n = 1.0 / static_cast<double>(n_scen);
  for (std::size_t s = 0; s < n_scen; ++s)
    for (std::size_t t = 0; t < horizon; ++t)
      for (std::size_t i = 0; i < n; ++i)
        de.program.objective[de.map.y(s, t, i)] = -inv_n;

  add_budget_and_z_rows(inst, de.map, de.program);

  // Battery variables carry the capacity bound; everything else is [0, inf).
  de.program.lower = zero_row(n_vars);
  de.program.upper.assign(n_vars, lp::kInf);
  for (std::size_t s = 0; s < n_scen; ++s)
    for (std::size_t t = 0; t < horizon; ++t)
      for (std::size_t i = 0; i < n; ++i)
        de.program.upper[de.map.battery(s, t, i)] = inst.battery_cap;

  const double harvest = inst.efficiency * inst.hap_power;
  for (std::size_t s = 0; s < n_scen; ++s) {
    const Scenario& scen = bundle.scenarios[s];
    for (std::size_t t = 0; t < horizon; ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        const double gain_coeff = harvest * scen.at(i, t);
        // P_c y + B^{t-1} - P_c T_i + eta P g tau >= 0
        auto avail = zero_row(n_vars);
        avail[de.map.y(s, t, i)] = inst.consume_power;
        avail[de.map.sample_time(i)] = -inst.consume_power;
        avail[de.map.tau()] = gain_coeff;
        double rhs = 0.0;
        if (t == 0) {
          rhs = -inst.battery_init[i];
        } else {
          avail[de.map.battery(s, t - 1, i)] = 1.0;
        }
        de.program.add_row(std::move(avail), lp::Relation::GreaterEq, rhs);

        // P_c y + B^{t-1} - P_c T_i + eta P g tau = B^t + delta^t
        auto balance = zero_row(n_vars);
        balance[de.map.y(s, t, i)] = inst.consume_power;
        balance[de.map.sample_time(i)] = -inst.consume_power;
        balance[de.map.tau()] = gain_coeff;
        if (t > 0) balance[de.map.battery(s, t - 1, i)] = 1.0;
        balance[de.map.battery(s, t, i)] = -1.0;
        balance[de.map.spill(s, t, i)] = -1.0;
        de.program.add_row(std::move(balance), lp::Relation::Equal, rhs);
      }
    }
  }
  return de;
}

Schedule extract_schedule(const ProblemInstance& inst,
                          const DeterministicEquivalent& de,
                          const lp::Solution& sol) {
  if (sol.status != lp::Status::Optimal)
    throw std::runtime_error("extract_schedule: solution is not optimal");
  std::vector<double> times(inst.n_nodes);
  double total = 0.0;
  for (std::size_t i = 0; i < inst.n_nodes; ++i) {
    times[i] = std::max(0.0, sol.variables[de.map.sample_time(i)]);
    total += times[i];
  }
  const double tau = inst.slot_seconds - total;
  if (std::abs(tau - sol.variables[de.map.tau()]) > 1e-6 || tau < -1e-6)
    throw std::runtime_error("extract_schedule: budget repair out of range");
  return Schedule::checked(std::max(0.0, tau), std::move(times),
                           inst.slot_seconds);
}

void pin_schedule(DeterministicEquivalent& de, const Schedule& sched) {
  const std::size_t n_vars = de.map.total();
  auto pin_tau = zero_row(n_vars);
  pin_tau[de.map.tau()] = 1.0;
  de.program.add_row(std::move(pin_tau), lp::Relation::Equal, sched.tau);
  for (std::size_t i = 0; i < de.map.n_nodes; ++i) {
    auto pin_t = zero_row(n_vars);
    pin_t[de.map.sample_time(i)] = 1.0;
    de.program.add_row(std::move(pin_t), lp::Relation::Equal,
                       sched.sample_times[i]);
  }
}

}  // namespace wpsched::detequiv
