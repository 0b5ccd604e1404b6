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

#include "wpsched/recourse.hpp"

#include <algorithm>
#include <stdexcept>

#include "wpsched/kernels.hpp"

namespace wpsched::recourse {

namespace {

void check_shapes(const ProblemInstance& inst, const Schedule& sched,
                  const Scenario& scen) {
  if (scen.n_nodes != inst.n_nodes || sched.sample_times.size() != inst.n_nodes)
    throw std::invalid_argument("recourse: node-count mismatch");
}

}  // namespace

RecourseOutcome recourse_multi(const ProblemInstance& inst,
                               const Schedule& sched, const Scenario& scen) {
  check_shapes(inst, sched, scen);
  const std::size_t n = inst.n_nodes;
  const std::size_t horizon = scen.horizon;

  RecourseOutcome out;
  out.n_nodes = n;
  out.horizon = horizon;
  out.idle_times.resize(n * horizon);
  out.battery_trace.resize(n * horizon);
  out.spill_trace.resize(n * horizon);

  std::vector<double> battery = inst.battery_init;
  const double harvest_coeff = inst.efficiency * inst.hap_power * sched.tau;
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double assign = sched.sample_times[i];
      const double available = battery[i] + harvest_coeff * scen.at(i, t);
      const double y =
          std::max(0.0, assign - available / inst.consume_power);
      const double consumed = inst.consume_power * (assign - y);
      // When y > 0 the node drains everything; rounding may leave a tiny
      // negative residue, which must not reach the battery trace.
      const double leftover = std::max(0.0, available - consumed);
      const double stored = std::min(inst.battery_cap, leftover);
      out.idle_times[t * n + i] = y;
      out.battery_trace[t * n + i] = stored;
      out.spill_trace[t * n + i] = std::max(0.0, leftover - stored);
      out.penalty += inst.penalties[i] * y;
      battery[i] = stored;
    }
  }
  return out;
}

RecourseOutcome recourse_single(const ProblemInstance& inst,
                                const Schedule& sched, const Scenario& scen) {
  if (scen.horizon != 1)
    throw std::invalid_argument("recourse_single needs a horizon-1 scenario");
  return recourse_multi(inst, sched, scen);
}

double second_stage_value_multi(const Schedule& sched,
                                const RecourseOutcome& out) {
  double idle = 0.0;
  for (double y : out.idle_times) idle += y;
  return static_cast<double>(out.horizon) * sched.min_sample_time() - idle;
}

std::vector<double> surplus_energy(const ProblemInstance& inst,
                                   const Schedule& sched,
                                   const Scenario& scen) {
  if (scen.horizon != 1)
    throw std::invalid_argument("surplus_energy needs a horizon-1 scenario");
  check_shapes(inst, sched, scen);
  std::vector<double> surplus(inst.n_nodes);
  for (std::size_t i = 0; i < inst.n_nodes; ++i) {
    const double energy = harvested_energy(inst, scen.at(i, 0), sched.tau);
    surplus[i] = inst.battery_init[i] + energy -
                 inst.consume_power * sched.sample_times[i];
  }
  return surplus;
}

void batch_idle_single(const ProblemInstance& inst, double t_assign,
                       double battery, double tau, const double* gains,
                       double* out, std::size_t n) {
  const double harvest_coeff = inst.efficiency * inst.hap_power * tau;
  kernels::idle_shortfall(out, gains, n, t_assign, battery, harvest_coeff,
                          inst.consume_power);
}

}  // namespace wpsched::recourse
