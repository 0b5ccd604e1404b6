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

#include "wpsched/model.hpp"

namespace wpsched::recourse {

// Closed-form second-stage evaluation. Given the first-stage schedule and a
// realized scenario, the minimal idle times (and hence the second-stage
// optimum) follow slot by slot:
//   y    = max(0, T_i - (B + E)/P_c)        with E = eta*P*g*tau
//   B'   = min(cap, B + E - P_c*(T_i - y)), spill = overflow past the cap
// These are the fast evaluators used inside SAA candidate assessment and the
// simulator, and the oracle counterparts of the LP path.

// Single-slot problem (scenario horizon must be 1). Fills the battery
// write-back trace as the horizon-1 case of the recursion.
RecourseOutcome recourse_single(const ProblemInstance& inst,
                                const Schedule& sched, const Scenario& scen);

// Multi-slot recursion over the scenario's horizon.
RecourseOutcome recourse_multi(const ProblemInstance& inst,
                               const Schedule& sched, const Scenario& scen);

// Value of the multi-slot second stage: horizon * min(T_i) - sum of idle
// times (unweighted).
double second_stage_value_multi(const Schedule& sched,
                                const RecourseOutcome& out);

// Per-node signed surplus B_i + E_i - P_c*T_i for a single-slot scenario;
// negative entries are shortfalls.
std::vector<double> surplus_energy(const ProblemInstance& inst,
                                   const Schedule& sched,
                                   const Scenario& scen);

// Batch single-slot idle times for one node across many gain draws, written
// through the SIMD kernel; out must hold n entries.
void batch_idle_single(const ProblemInstance& inst, double t_assign,
                       double battery, double tau, const double* gains,
                       double* out, std::size_t n);

}  // namespace wpsched::recourse
