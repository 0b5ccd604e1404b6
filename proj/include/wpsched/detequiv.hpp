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

#include <vector>

#include "wpsched/lp.hpp"
#include "wpsched/model.hpp"

namespace wpsched::detequiv {

/// Equal-weight scenario collection (weight 1/N each), uniform shape.
struct ScenarioBundle {
  std::vector<Scenario> scenarios;

  std::size_t size() const { return scenarios.size(); }
  std::size_t n_nodes() const { return scenarios.front().n_nodes; }
  std::size_t horizon() const { return scenarios.front().horizon; }
  void validate() const;
};

/// Index bookkeeping for the flat LP variable vector.
///
/// Single slot:  [tau, T_0..T_{n-1}, Z, y(j,i)...]
/// Multi slot:   [tau, T_0..T_{n-1}, Z, then per (s,t,i): y, B, delta]
struct VariableMap {
  std::size_t n_nodes = 0;
  std::size_t n_scenarios = 0;
  std::size_t horizon = 0;
  bool multi = false;

  std::size_t tau() const { return 0; }
  std::size_t sample_time(std::size_t i) const { return 1 + i; }
  std::size_t z() const { return 1 + n_nodes; }
  std::size_t y(std::size_t s, std::size_t t, std::size_t i) const {
    const std::size_t base = 2 + n_nodes;
    if (!multi) return base + s * n_nodes + i;
    return base + 3 * ((s * horizon + t) * n_nodes + i);
  }
  std::size_t battery(std::size_t s, std::size_t t, std::size_t i) const {
    return y(s, t, i) + 1;
  }
  std::size_t spill(std::size_t s, std::size_t t, std::size_t i) const {
    return y(s, t, i) + 2;
  }
  std::size_t total() const {
    return 2 + n_nodes +
           (multi ? 3 * n_nodes * n_scenarios * horizon
                  : n_nodes * n_scenarios);
  }
};

struct DeterministicEquivalent {
  lp::LinearProgram program;
  VariableMap map;
};

// Single-slot deterministic equivalent of the two-stage program:
// maximize Z - (1/N) sum_j sum_i w_i y_i^j subject to the unit time budget,
// Z <= T_i, and one harvested-energy recourse row per (scenario, node).
DeterministicEquivalent build_single(const ProblemInstance& inst,
                                     const ScenarioBundle& bundle);

// Multi-slot deterministic equivalent: maximize
// (1/N) sum_s [T*Z - sum_{t,i} y_i^ts] with per-slot battery-balance rows,
// battery capped at battery_cap, and nonnegative spill.
DeterministicEquivalent build_multi(const ProblemInstance& inst,
                                    const ScenarioBundle& bundle);

// Read (tau, T_i) out of an optimal solution, repairing solver-level
// round-off so the schedule meets the 1e-9 budget invariant exactly.
Schedule extract_schedule(const ProblemInstance& inst,
                          const DeterministicEquivalent& de,
                          const lp::Solution& sol);

// Pin the first stage to a fixed schedule with equality rows; the LP optimum
// then equals the (sign-flipped) recourse cost of that schedule. Test oracle
// support.
void pin_schedule(DeterministicEquivalent& de, const Schedule& sched);

}  // namespace wpsched::detequiv
