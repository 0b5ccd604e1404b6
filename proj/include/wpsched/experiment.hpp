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

#include "wpsched/config.hpp"
#include "wpsched/sim.hpp"

namespace wpsched::experiment {

inline constexpr const char* kVersion = "0.1.0";

/// One point of the experiment matrix {channel x policy x sweep value}.
struct Cell {
  std::string channel_token;  // as configured, e.g. "rician" or "fixed:0.5"
  ChannelModel model;
  sim::Policy policy = sim::Policy::SpSaa;
  sim::Mode mode = sim::Mode::Multi;
  double eta = 0.4;
  std::size_t horizon = 1;
  std::uint64_t master_seed = 1;
};

struct CellResult {
  double mean_idle = 0.0;
  double se_idle = 0.0;
  double z = 0.0;
  double tau = 0.0;
  double var_gap = 0.0;
  bool converged = true;
};

struct RunOutput {
  std::string csv_path;
  std::string metadata_path;
  std::size_t n_rows = 0;
};

// Resolve the instance / SAA settings embedded in a config.
ProblemInstance instance_from(const config::Config& cfg);
saa::SaaConfig saa_from(const config::Config& cfg);

// Expand a config into its cell matrix in deterministic order.
std::vector<Cell> build_matrix(const config::Config& cfg);

// Execute one cell: plan with the cell's policy, then score the plan under
// the true channel (out-of-sample draws for horizon 1, simulator episodes
// otherwise).
CellResult run_cell(const config::Config& cfg, const Cell& cell);

// Full experiment run: cell matrix on a bounded worker pool (WPSCHED_WORKERS
// overrides the width), rows written in matrix order regardless of
// completion order, plus metadata and per-series plot data files.
RunOutput run(const config::Config& cfg, const std::string& out_dir);

// Surplus-energy histogram of the configured policy's plan under the true
// channel; writes <out_dir>/surplus.csv and returns its path.
std::string emit_surplus_histogram(const config::Config& cfg,
                                   const std::string& out_dir);

// Fixed-width float formatting used in every emitted file (9 significant
// digits, bit-stable regression fixtures).
std::string format_double(double v);

}  // namespace wpsched::experiment
