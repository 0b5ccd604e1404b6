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
#include <cstdint>
#include <vector>

namespace wpsched {

/// Physical parameters of one HAP plus n harvesting sensor nodes.
/// All types in this header are immutable value data once built; they can be
/// shared freely across worker threads.
struct ProblemInstance {
  std::size_t n_nodes = 5;
  double hap_power = 0.25;      // effective radiated power, W
  double consume_power = 0.05;  // per-node drain while sampling, W
  double efficiency = 0.4;      // RF-to-DC conversion, in (0,1]
  double battery_cap = 0.1;     // supercapacitor capacity, J
  std::vector<double> battery_init;  // J per node; defaults to all-zero
  std::vector<double> penalties;     // idle-time weights w_i; defaults to 1
  double slot_seconds = 1.0;

  static ProblemInstance defaults(std::size_t n = 5);

  // Throws std::invalid_argument when any physical invariant is violated.
  void validate() const;
};

/// First-stage decision: HAP charging time plus one sampling time per node.
struct Schedule {
  double tau = 0.0;
  std::vector<double> sample_times;

  double min_sample_time() const;

  // Validating constructor: tau >= 0, every T_i >= 0, and
  // tau + sum(T_i) == budget within 1e-9. Throws std::invalid_argument.
  static Schedule checked(double tau, std::vector<double> sample_times,
                          double budget = 1.0);
};

/// One channel-gain realization: n_nodes x horizon, every entry in [0,1].
/// Slot-major storage so multi-slot rollouts walk it contiguously.
struct Scenario {
  std::size_t n_nodes = 0;
  std::size_t horizon = 0;
  std::vector<double> gains;  // gains[slot * n_nodes + node]

  double at(std::size_t node, std::size_t slot) const {
    return gains[slot * n_nodes + node];
  }
  double& at(std::size_t node, std::size_t slot) {
    return gains[slot * n_nodes + node];
  }

  static Scenario constant(std::size_t n_nodes, std::size_t horizon, double g);
  void validate() const;
};

/// Second-stage outcome of applying a Schedule under one Scenario.
/// Traces are slot-major like Scenario; battery_trace holds end-of-slot
/// levels.
struct RecourseOutcome {
  std::size_t n_nodes = 0;
  std::size_t horizon = 0;
  std::vector<double> idle_times;     // seconds, y
  std::vector<double> battery_trace;  // J, within [0, battery_cap]
  std::vector<double> spill_trace;    // J lost to the full battery
  double penalty = 0.0;               // sum over slots and nodes of w_i * y

  double idle(std::size_t node, std::size_t slot) const {
    return idle_times[slot * n_nodes + node];
  }
  double battery(std::size_t node, std::size_t slot) const {
    return battery_trace[slot * n_nodes + node];
  }
  double spill(std::size_t node, std::size_t slot) const {
    return spill_trace[slot * n_nodes + node];
  }
  double total_idle() const;
};

// Energy harvested by one node: efficiency * hap_power * gain * tau.
// Throws std::invalid_argument if gain is outside [0,1] or tau < 0.
double harvested_energy(const ProblemInstance& inst, double gain, double tau);

}  // namespace wpsched
