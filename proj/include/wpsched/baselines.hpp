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

#include <cstdint>

#include "wpsched/channels.hpp"
#include "wpsched/model.hpp"
#include "wpsched/saa.hpp"

namespace wpsched::baselines {

// Fixed-gain policies: plan as if the channel gain were a known constant
// (0.01 / 0.5 / 1.0 for the min/avg/max variants), then get judged under the
// true distribution. Implemented as degenerate SAA runs (N = 1, Fixed model)
// so the baseline path and the stochastic path share one pipeline.

constexpr double kMinGain = 0.01;
constexpr double kAvgGain = 0.5;
constexpr double kMaxGain = 1.0;

// Optimal schedule for a degenerate single-scenario program at the assumed
// gain. assumed_gain = 0 is rejected (certain starvation). With zero initial
// batteries and homogeneous nodes this lands on the analytic balance
// tau* = P_c / (P_c + n eta P g), T_i = (1 - tau*) / n.
Schedule fixed_gain_schedule(const ProblemInstance& inst, double assumed_gain,
                             std::size_t horizon);

struct BaselineMetrics {
  double z = 0.0;    // min_i T_i of the planned schedule
  double tau = 0.0;
  double mean_idle = 0.0;  // per-slot total idle under the true model
  double idle_variance = 0.0;
};

// Score a planned schedule under the true channel model on n_eval fresh
// scenarios (delegates to the SAA evaluator).
BaselineMetrics evaluate_baseline(const ProblemInstance& inst,
                                  const Schedule& sched,
                                  const ChannelModel& model,
                                  std::size_t horizon, std::size_t n_eval,
                                  std::uint64_t seed);

}  // namespace wpsched::baselines
