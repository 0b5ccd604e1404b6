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

#include "wpsched/baselines.hpp"

#include <stdexcept>

namespace wpsched::baselines {

Schedule fixed_gain_schedule(const ProblemInstance& inst, double assumed_gain,
                             std::size_t horizon) {
  if (!(assumed_gain > 0.0 && assumed_gain <= 1.0))
    throw std::invalid_argument(
        "fixed-gain baseline needs assumed_gain in (0,1]");
  saa::SaaConfig cfg;
  cfg.m_replications = 2;  // degenerate: both replications are identical
  cfg.n_scenarios = 1;
  cfg.n_eval = 10;
  cfg.seed = 0;
  const ChannelModel model = ChannelModel::fixed(assumed_gain);
  return saa::solve_saa(inst, model, horizon, cfg).best_schedule;
}

BaselineMetrics evaluate_baseline(const ProblemInstance& inst,
                                  const Schedule& sched,
                                  const ChannelModel& model,
                                  std::size_t horizon, std::size_t n_eval,
                                  std::uint64_t seed) {
  const saa::Evaluation ev =
      saa::evaluate_schedule(inst, sched, model, horizon, n_eval, seed);
  BaselineMetrics m;
  m.z = sched.min_sample_time();
  m.tau = sched.tau;
  m.mean_idle = ev.idle_mean_per_slot;
  m.idle_variance = ev.idle_variance;
  return m;
}

}  // namespace wpsched::baselines
