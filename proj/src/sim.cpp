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

#include "wpsched/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "wpsched/baselines.hpp"
#include "wpsched/recourse.hpp"
#include "wpsched/rng.hpp"

namespace wpsched::sim {

Policy parse_policy(const std::string& text) {
  if (text == "spsaa") return Policy::SpSaa;
  if (text == "min_gain") return Policy::MinGain;
  if (text == "avg_gain") return Policy::AvgGain;
  if (text == "max_gain") return Policy::MaxGain;
  throw std::invalid_argument("unknown policy: " + text);
}

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::SpSaa: return "spsaa";
    case Policy::MinGain: return "min_gain";
    case Policy::AvgGain: return "avg_gain";
    case Policy::MaxGain: return "max_gain";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "single") return Mode::Single;
  if (text == "multi") return Mode::Multi;
  throw std::invalid_argument("unknown mode: " + text);
}

namespace {

// One planning step. Planner seeds are slot-index-mixed only, so every
// episode re-plans a given slot from the same fresh scenario set; episodes
// differ through the battery state the planner sees.
Schedule plan(const ProblemInstance& inst, const ChannelModel& model,
              const SimConfig& cfg, std::size_t horizon, std::size_t slot) {
  switch (cfg.policy) {
    case Policy::SpSaa: {
      saa::SaaConfig planner = cfg.saa;
      planner.seed = rng::derive(cfg.seed, rng::kSimPlan, slot);
      return saa::solve_saa(inst, model, horizon, planner).best_schedule;
    }
    case Policy::MinGain:
      return baselines::fixed_gain_schedule(inst, baselines::kMinGain, horizon);
    case Policy::AvgGain:
      return baselines::fixed_gain_schedule(inst, baselines::kAvgGain, horizon);
    case Policy::MaxGain:
      return baselines::fixed_gain_schedule(inst, baselines::kMaxGain, horizon);
  }
  throw std::logic_error("unreachable policy");
}

SlotRecord make_record(std::size_t slot, const Schedule& sched,
                       const Scenario& scen, const RecourseOutcome& out,
                       std::size_t trace_slot) {
  const std::size_t n = scen.n_nodes;
  SlotRecord rec;
  rec.slot = slot;
  rec.schedule = sched;
  rec.gains.resize(n);
  rec.idle.resize(n);
  rec.battery.resize(n);
  rec.spill.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rec.gains[i] = scen.at(i, trace_slot);
    rec.idle[i] = out.idle(i, trace_slot);
    rec.battery[i] = out.battery(i, trace_slot);
    rec.spill[i] = out.spill(i, trace_slot);
  }
  return rec;
}

EpisodeResult run_episode_impl(const ProblemInstance& inst,
                               const ChannelModel& model, const SimConfig& cfg,
                               std::size_t episode_index,
                               const Schedule* initial_plan) {
  if (cfg.horizon < 1) throw std::invalid_argument("sim: horizon must be >= 1");
  GainStream gains(model, rng::derive(cfg.seed, rng::kSimGains, episode_index));

  EpisodeResult ep;
  ep.records.reserve(cfg.horizon);
  try {
    if (cfg.mode == Mode::Multi) {
      const Schedule sched = initial_plan
                                 ? *initial_plan
                                 : plan(inst, model, cfg, cfg.horizon, 0);
      const Scenario scen = gains.sample_scenario(inst.n_nodes, cfg.horizon);
      const RecourseOutcome out = recourse::recourse_multi(inst, sched, scen);
      for (std::size_t t = 0; t < cfg.horizon; ++t)
        ep.records.push_back(make_record(t, sched, scen, out, t));
    } else {
      ProblemInstance current = inst;
      for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const Schedule sched = (t == 0 && initial_plan)
                                   ? *initial_plan
                                   : plan(current, model, cfg, 1, t);
        const Scenario scen = gains.sample_scenario(inst.n_nodes, 1);
        const RecourseOutcome out =
            recourse::recourse_single(current, sched, scen);
        ep.records.push_back(make_record(t, sched, scen, out, 0));
        for (std::size_t i = 0; i < inst.n_nodes; ++i)
          current.battery_init[i] = out.battery(i, 0);
      }
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("sim: episode " + std::to_string(episode_index) +
                             " aborted at slot " +
                             std::to_string(ep.records.size()) + ": " +
                             e.what());
  }
  return ep;
}

}  // namespace

EpisodeResult run_episode(const ProblemInstance& inst, const ChannelModel& model,
                          const SimConfig& cfg, std::size_t episode_index) {
  inst.validate();
  return run_episode_impl(inst, model, cfg, episode_index, nullptr);
}

Summary aggregate(const std::vector<EpisodeResult>& episodes) {
  if (episodes.empty())
    throw std::invalid_argument("aggregate: no episodes");
  const std::size_t n_ep = episodes.size();
  std::vector<double> ep_idle(n_ep, 0.0);
  double z_acc = 0.0, tau_acc = 0.0;
  for (std::size_t e = 0; e < n_ep; ++e) {
    const auto& records = episodes[e].records;
    double idle = 0.0, z = 0.0, tau = 0.0;
    for (const SlotRecord& r : records) {
      for (double y : r.idle) idle += y;
      z += r.schedule.min_sample_time();
      tau += r.schedule.tau;
    }
    const double slots = static_cast<double>(records.size());
    ep_idle[e] = idle / slots;
    z_acc += z / slots;
    tau_acc += tau / slots;
  }
  Summary s;
  s.episodes = n_ep;
  s.slots_per_episode = episodes.front().records.size();
  double mean = 0.0;
  for (double v : ep_idle) mean += v;
  mean /= static_cast<double>(n_ep);
  s.mean_idle = mean;
  if (n_ep > 1) {
    double ss = 0.0;
    for (double v : ep_idle) ss += (v - mean) * (v - mean);
    s.se_idle = std::sqrt(ss / (static_cast<double>(n_ep - 1) *
                                static_cast<double>(n_ep)));
  }
  s.mean_z = z_acc / static_cast<double>(n_ep);
  s.mean_tau = tau_acc / static_cast<double>(n_ep);
  return s;
}

Summary run(const ProblemInstance& inst, const ChannelModel& model,
            const SimConfig& cfg) {
  const Schedule initial =
      plan(inst, model, cfg, cfg.mode == Mode::Multi ? cfg.horizon : 1, 0);
  return run_with_initial_plan(inst, model, cfg, initial);
}

Summary run_with_initial_plan(const ProblemInstance& inst,
                              const ChannelModel& model, const SimConfig& cfg,
                              const Schedule& initial_plan) {
  inst.validate();
  if (cfg.episodes < 1) throw std::invalid_argument("sim: episodes must be >= 1");
  std::vector<EpisodeResult> episodes;
  episodes.reserve(cfg.episodes);
  for (std::size_t e = 0; e < cfg.episodes; ++e)
    episodes.push_back(run_episode_impl(inst, model, cfg, e, &initial_plan));
  return aggregate(episodes);
}

}  // namespace wpsched::sim
