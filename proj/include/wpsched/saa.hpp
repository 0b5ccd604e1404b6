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
#include <stdexcept>
#include <utility>
#include <vector>

#include "wpsched/channels.hpp"
#include "wpsched/model.hpp"

namespace wpsched::saa {

/// Raised when a deterministic-equivalent solve inside SAA does not come
/// back optimal (carries replication index and seed in the message).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SaaConfig {
  std::size_t m_replications = 8;  // M
  std::size_t n_scenarios = 64;    // N per replication
  std::size_t n_eval = 0;          // N'; 0 means 10 * N
  double gap_variance_target = 1e-3;
  std::uint64_t seed = 1;

  std::size_t resolved_n_eval() const {
    return n_eval == 0 ? 10 * n_scenarios : n_eval;
  }
  // M >= 2 and N' >= 10 N; throws std::invalid_argument otherwise.
  void validate() const;
};

/// Out-of-sample estimate of one schedule on fresh scenarios.
struct Evaluation {
  double objective_mean = 0.0;      // first-stage objective sample mean
  double objective_variance = 0.0;  // variance of that mean
  double idle_mean_per_slot = 0.0;  // total idle across nodes, per slot
  double idle_variance = 0.0;       // variance of that mean
  double tau_plus_mean_recourse = 0.0;  // tau-hat + mean second-stage value
};

struct SaaCandidate {
  Schedule schedule;
  double replication_objective = 0.0;  // z_N^m
  Evaluation eval;
};

struct AdaptiveStep {
  std::size_t n_scenarios = 0;
  std::size_t m_replications = 0;
  double var_gap = 0.0;
  bool converged = false;
};

struct SaaReport {
  Schedule best_schedule;
  std::size_t best_index = 0;
  std::vector<SaaCandidate> candidates;
  double z_bar = 0.0;       // mean of replication objectives
  double z_hat_best = 0.0;  // evaluated objective of the selected candidate
  double gap = 0.0;         // z_bar - z_hat_best (signed)
  double var_eval = 0.0;
  double var_zbar = 0.0;
  double var_gap = 0.0;     // always var_eval + var_zbar
  bool converged = false;
  std::size_t m_replications = 0;
  std::size_t n_scenarios = 0;
  std::size_t n_eval = 0;
  std::vector<AdaptiveStep> trajectory;  // filled by adaptive_run
};

// Full evaluation record for a schedule on n_eval fresh scenarios drawn from
// the stream seeded with `seed` (callers keep evaluation seeds disjoint from
// solve seeds via rng::derive tags).
Evaluation evaluate_schedule(const ProblemInstance& inst, const Schedule& sched,
                             const ChannelModel& model, std::size_t horizon,
                             std::size_t n_eval, std::uint64_t seed);

// (objective estimate, variance of the estimate); n_eval must be >= 2.
std::pair<double, double> evaluate_candidate(const ProblemInstance& inst,
                                             const Schedule& sched,
                                             const ChannelModel& model,
                                             std::size_t horizon,
                                             std::size_t n_eval,
                                             std::uint64_t seed);

// M replications of N-scenario deterministic-equivalent solves, shared
// out-of-sample evaluation of every candidate, argmax selection, and the
// gap-variance statistics with the var_gap = var_eval + var_zbar identity.
SaaReport solve_saa(const ProblemInstance& inst, const ChannelModel& model,
                    std::size_t horizon, const SaaConfig& cfg);

struct AdaptiveCaps {
  std::size_t max_n = std::size_t{1} << 14;
  std::size_t max_m = 64;
};

// Re-runs solve_saa, doubling N first and M next (alternating, each within
// its cap) until var_gap drops below the target. A cap-out returns the last
// report with converged = false rather than throwing.
SaaReport adaptive_run(const ProblemInstance& inst, const ChannelModel& model,
                       std::size_t horizon, const SaaConfig& cfg,
                       const AdaptiveCaps& caps = {});

}  // namespace wpsched::saa
