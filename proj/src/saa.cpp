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

#include "wpsched/saa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wpsched/detequiv.hpp"
#include "wpsched/lp.hpp"
#include "wpsched/recourse.hpp"
#include "wpsched/rng.hpp"

namespace wpsched::saa {

namespace {

// Mean and variance-of-the-mean in fixed index order, so results do not
// depend on worker count or accumulation scheduling.
std::pair<double, double> mean_and_variance(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, ss / ((n - 1.0) * n)};
}

}  // namespace

void SaaConfig::validate() const {
  if (m_replications < 2)
    throw std::invalid_argument("saa: M must be >= 2 (variance needs samples)");
  if (n_scenarios < 1) throw std::invalid_argument("saa: N must be >= 1");
  if (n_eval != 0 && n_eval < 10 * n_scenarios)
    throw std::invalid_argument("saa: N' must be >= 10 N");
  if (!(gap_variance_target > 0.0))
    throw std::invalid_argument("saa: gap variance target must be > 0");
}

Evaluation evaluate_schedule(const ProblemInstance& inst, const Schedule& sched,
                             const ChannelModel& model, std::size_t horizon,
                             std::size_t n_eval, std::uint64_t seed) {
  inst.validate();
  if (n_eval < 2) throw std::invalid_argument("evaluate: n_eval must be >= 2");
  if (horizon < 1) throw std::invalid_argument("evaluate: horizon must be >= 1");

  const std::size_t n = inst.n_nodes;
  GainStream stream(model, seed);
  std::vector<double> objective(n_eval);
  std::vector<double> idle_per_slot(n_eval);

  if (horizon == 1) {
    // Node-major gain buffers so the per-node idle computation runs through
    // the batch kernel; draws stay in (scenario, node) stream order.
    std::vector<double> gains(n * n_eval);
    for (std::size_t j = 0; j < n_eval; ++j)
      for (std::size_t i = 0; i < n; ++i) gains[i * n_eval + j] = stream.next();

    std::vector<double> idle(n_eval);
    std::vector<double> penalty(n_eval, 0.0);
    std::vector<double> total_idle(n_eval, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      recourse::batch_idle_single(inst, sched.sample_times[i],
                                  inst.battery_init[i], sched.tau,
                                  gains.data() + i * n_eval, idle.data(),
                                  n_eval);
      const double w = inst.penalties[i];
      for (std::size_t j = 0; j < n_eval; ++j) {
        penalty[j] += w * idle[j];
        total_idle[j] += idle[j];
      }
    }
    const double z = sched.min_sample_time();
    for (std::size_t j = 0; j < n_eval; ++j) {
      objective[j] = z - penalty[j];
      idle_per_slot[j] = total_idle[j];
    }
  } else {
    for (std::size_t j = 0; j < n_eval; ++j) {
      const Scenario scen = stream.sample_scenario(n, horizon);
      const RecourseOutcome out = recourse::recourse_multi(inst, sched, scen);
      objective[j] = recourse::second_stage_value_multi(sched, out);
      idle_per_slot[j] = out.total_idle() / static_cast<double>(horizon);
    }
  }

  Evaluation ev;
  const auto [obj_mean, obj_var] = mean_and_variance(objective);
  const auto [idle_mean, idle_var] = mean_and_variance(idle_per_slot);
  ev.objective_mean = obj_mean;
  ev.objective_variance = obj_var;
  ev.idle_mean_per_slot = idle_mean;
  ev.idle_variance = idle_var;
  // Second-stage values enter the raw tau-hat form with the sign they carry
  // in their own stage: minimized penalties for one slot, maximized values
  // for multi-slot.
  double mean_recourse = 0.0;
  if (horizon == 1) {
    for (std::size_t j = 0; j < n_eval; ++j)
      mean_recourse += sched.min_sample_time() - objective[j];
  } else {
    for (double v : objective) mean_recourse += v;
  }
  ev.tau_plus_mean_recourse =
      sched.tau + mean_recourse / static_cast<double>(n_eval);
  return ev;
}

std::pair<double, double> evaluate_candidate(const ProblemInstance& inst,
                                             const Schedule& sched,
                                             const ChannelModel& model,
                                             std::size_t horizon,
                                             std::size_t n_eval,
                                             std::uint64_t seed) {
  const Evaluation ev =
      evaluate_schedule(inst, sched, model, horizon, n_eval, seed);
  return {ev.objective_mean, ev.objective_variance};
}

SaaReport solve_saa(const ProblemInstance& inst, const ChannelModel& model,
                    std::size_t horizon, const SaaConfig& cfg) {
  inst.validate();
  cfg.validate();
  if (horizon < 1) throw std::invalid_argument("saa: horizon must be >= 1");

  SaaReport report;
  report.m_replications = cfg.m_replications;
  report.n_scenarios = cfg.n_scenarios;
  report.n_eval = cfg.resolved_n_eval();

  for (std::size_t m = 0; m < cfg.m_replications; ++m) {
    const std::uint64_t rep_seed =
        rng::derive(cfg.seed, rng::kSolveScenarios, m);
    GainStream stream(model, rep_seed);
    detequiv::ScenarioBundle bundle;
    bundle.scenarios.reserve(cfg.n_scenarios);
    for (std::size_t j = 0; j < cfg.n_scenarios; ++j)
      bundle.scenarios.push_back(stream.sample_scenario(inst.n_nodes, horizon));

    const detequiv::DeterministicEquivalent de =
        horizon == 1 ? detequiv::build_single(inst, bundle)
                     : detequiv::build_multi(inst, bundle);
    const lp::Solution sol = lp::solve(de.program);
    if (sol.status != lp::Status::Optimal)
      throw SolverError("saa: replication " + std::to_string(m) + " (seed " +
                        std::to_string(rep_seed) + ") ended " +
                        (sol.status == lp::Status::Infeasible ? "infeasible"
                                                              : "unbounded"));
    SaaCandidate cand;
    cand.schedule = detequiv::extract_schedule(inst, de, sol);
    cand.replication_objective = sol.objective_value;
    report.candidates.push_back(std::move(cand));
  }

  std::vector<double> z_values;
  for (const SaaCandidate& c : report.candidates)
    z_values.push_back(c.replication_objective);
  const auto [z_bar, var_zbar] = mean_and_variance(z_values);
  report.z_bar = z_bar;
  report.var_zbar = var_zbar;

  // All candidates are scored on one shared fresh scenario set, disjoint
  // from every solve stream by tag construction.
  const std::uint64_t eval_seed = rng::derive(cfg.seed, rng::kEvalScenarios);
  std::size_t best = 0;
  for (std::size_t m = 0; m < report.candidates.size(); ++m) {
    SaaCandidate& cand = report.candidates[m];
    cand.eval = evaluate_schedule(inst, cand.schedule, model, horizon,
                                  report.n_eval, eval_seed);
    if (cand.eval.objective_mean >
        report.candidates[best].eval.objective_mean)
      best = m;
  }

  report.best_index = best;
  report.best_schedule = report.candidates[best].schedule;
  report.z_hat_best = report.candidates[best].eval.objective_mean;
  report.var_eval = report.candidates[best].eval.objective_variance;
  report.gap = report.z_bar - report.z_hat_best;
  report.var_gap = report.var_eval + report.var_zbar;
  report.converged = report.var_gap < cfg.gap_variance_target;
  return report;
}

SaaReport adaptive_run(const ProblemInstance& inst, const ChannelModel& model,
                       std::size_t horizon, const SaaConfig& cfg,
                       const AdaptiveCaps& caps) {
  const std::size_t kCapN = caps.max_n;
  const std::size_t kCapM = caps.max_m;

  SaaConfig cur = cfg;
  std::vector<AdaptiveStep> trajectory;
  bool grow_n_next = true;
  for (std::size_t iter = 0;; ++iter) {
    cur.seed = rng::derive(cfg.seed, rng::kAdaptive, iter);
    SaaReport report = solve_saa(inst, model, horizon, cur);
    trajectory.push_back({cur.n_scenarios, cur.m_replications, report.var_gap,
                          report.converged});
    const bool can_grow_n = cur.n_scenarios * 2 <= kCapN;
    const bool can_grow_m = cur.m_replications * 2 <= kCapM;
    if (report.converged || (!can_grow_n && !can_grow_m)) {
      report.trajectory = std::move(trajectory);
      return report;
    }
    if ((grow_n_next && can_grow_n) || !can_grow_m)
      cur.n_scenarios *= 2;
    else
      cur.m_replications *= 2;
    grow_n_next = !grow_n_next;
  }
}

}  // namespace wpsched::saa
