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
#include <string>
#include <vector>

#include "wpsched/channels.hpp"
#include "wpsched/model.hpp"
#include "wpsched/saa.hpp"

namespace wpsched::sim {

enum class Mode { Single, Multi };

enum class Policy { SpSaa, MinGain, AvgGain, MaxGain };

Policy parse_policy(const std::string& text);
const char* policy_name(Policy p);
Mode parse_mode(const std::string& text);

struct SimConfig {
  Mode mode = Mode::Multi;
  std::size_t horizon = 1;   // T
  Policy policy = Policy::SpSaa;
  std::size_t episodes = 100;
  std::uint64_t seed = 1;
  saa::SaaConfig saa;        // planner settings when policy == SpSaa
};

/// What happened in one slot of one episode.
struct SlotRecord {
  std::size_t slot = 0;
  Schedule schedule;            // the plan in force during this slot
  std::vector<double> gains;    // realized per-node gains
  std::vector<double> idle;     // y_i, seconds
  std::vector<double> battery;  // end-of-slot level, J
  std::vector<double> spill;    // J
};

struct EpisodeResult {
  std::vector<SlotRecord> records;
};

/// Slot-by-slot rollout of one episode.
///   Multi mode: one plan covers all horizon slots (reused across episodes —
///   it depends only on the initial batteries), batteries evolve under the
///   realized gains.
///   Single mode: each slot re-plans from the reported batteries with a fresh
///   planner seed, then one realized slot is applied.
EpisodeResult run_episode(const ProblemInstance& inst, const ChannelModel& model,
                          const SimConfig& cfg, std::size_t episode_index);

struct Summary {
  double mean_idle = 0.0;  // per-slot total idle across nodes
  double se_idle = 0.0;    // standard error over episodes
  double mean_z = 0.0;     // min_i T_i of the schedules in force
  double mean_tau = 0.0;
  std::size_t episodes = 0;
  std::size_t slots_per_episode = 0;
};

// Means and standard errors across episodes (episode metric = time average
// over its slots).
Summary aggregate(const std::vector<EpisodeResult>& episodes);

// Convenience: run `cfg.episodes` episodes and aggregate.
Summary run(const ProblemInstance& inst, const ChannelModel& model,
            const SimConfig& cfg);

// Like run(), with the caller supplying the initial plan: the whole-horizon
// plan in Multi mode, the slot-0 plan in Single mode. Both are episode-
// invariant (they see the same initial batteries and the same planner seed),
// so precomputing them avoids one identical re-solve per episode.
Summary run_with_initial_plan(const ProblemInstance& inst,
                              const ChannelModel& model, const SimConfig& cfg,
                              const Schedule& initial_plan);

}  // namespace wpsched::sim
