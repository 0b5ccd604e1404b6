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

#include "wpsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wpsched {

ProblemInstance ProblemInstance::defaults(std::size_t n) {
  ProblemInstance inst;
  inst.n_nodes = n;
  inst.battery_init.assign(n, 0.0);
  inst.penalties.assign(n, 1.0);
  return inst;
}

void ProblemInstance::validate() const {
  if (n_nodes < 1) throw std::invalid_argument("n_nodes must be >= 1");
  if (!(hap_power > 0.0)) throw std::invalid_argument("hap_power must be > 0");
  if (!(consume_power > 0.0))
    throw std::invalid_argument("consume_power must be > 0");
  if (!(efficiency > 0.0 && efficiency <= 1.0))
    throw std::invalid_argument("efficiency must be in (0,1]");
  if (!(battery_cap >= 0.0))
    throw std::invalid_argument("battery_cap must be >= 0");
  if (!(slot_seconds > 0.0))
    throw std::invalid_argument("slot_seconds must be > 0");
  if (battery_init.size() != n_nodes || penalties.size() != n_nodes)
    throw std::invalid_argument("battery_init/penalties must have n_nodes entries");
  for (double b : battery_init)
    if (!(b >= 0.0 && b <= battery_cap))
      throw std::invalid_argument("battery_init must lie in [0, battery_cap]");
  for (double w : penalties)
    if (!(w >= 0.0)) throw std::invalid_argument("penalties must be >= 0");
}

double Schedule::min_sample_time() const {
  return *std::min_element(sample_times.begin(), sample_times.end());
}

Schedule Schedule::checked(double tau, std::vector<double> sample_times,
                           double budget) {
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
  if (sample_times.empty())
    throw std::invalid_argument("schedule needs at least one node");
  for (double t : sample_times)
    if (!(t >= 0.0)) throw std::invalid_argument("sample times must be >= 0");
  double total = tau;
  for (double t : sample_times) total += t;
  if (std::abs(total - budget) > 1e-9)
    throw std::invalid_argument("time budget violated: tau + sum(T_i) = " +
                                std::to_string(total) + ", budget " +
                                std::to_string(budget));
  Schedule s;
  s.tau = tau;
  s.sample_times = std::move(sample_times);
  return s;
}

Scenario Scenario::constant(std::size_t n_nodes, std::size_t horizon, double g) {
  Scenario s;
  s.n_nodes = n_nodes;
  s.horizon = horizon;
  s.gains.assign(n_nodes * horizon, g);
  s.validate();
  return s;
}

void Scenario::validate() const {
  if (n_nodes < 1 || horizon < 1)
    throw std::invalid_argument("scenario needs n_nodes >= 1 and horizon >= 1");
  if (gains.size() != n_nodes * horizon)
    throw std::invalid_argument("scenario gain matrix has wrong shape");
  for (double g : gains)
    if (!(g >= 0.0 && g <= 1.0))
      throw std::invalid_argument("channel gains must lie in [0,1]");
}

double RecourseOutcome::total_idle() const {
  return std::accumulate(idle_times.begin(), idle_times.end(), 0.0);
}

double harvested_energy(const ProblemInstance& inst, double gain, double tau) {
  if (!(gain >= 0.0 && gain <= 1.0))
    throw std::invalid_argument("gain must lie in [0,1]");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
  return inst.efficiency * inst.hap_power * gain * tau;
}

}  // namespace wpsched
