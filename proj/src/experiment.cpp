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

#include "wpsched/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "wpsched/baselines.hpp"
#include "wpsched/kernels.hpp"
#include "wpsched/recourse.hpp"
#include "wpsched/rng.hpp"

namespace wpsched::experiment {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ChannelModel channel_from_token(const config::Config& cfg,
                                const std::string& token) {
  if (token.find(':') != std::string::npos) return ChannelModel::parse(token);
  // Bare kind: fall back to channel.param / channel.spread when configured.
  std::string spec = token;
  if (cfg.has("channel.param")) {
    spec += ":" + cfg.get_string("channel.param", "");
    if (cfg.has("channel.spread"))
      spec += ":" + cfg.get_string("channel.spread", "");
  }
  return ChannelModel::parse(spec);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string cell_key(const Cell& cell) {
  return cell.channel_token + "|" + sim::policy_name(cell.policy) + "|" +
         (cell.mode == sim::Mode::Multi ? "multi" : "single") + "|eta=" +
         format_double(cell.eta) + "|T=" + std::to_string(cell.horizon);
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ':' || c == '.' || c == '/') c = '-';
  return s;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("WPSCHED_WORKERS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

struct PlanOutcome {
  Schedule schedule;
  double var_gap = 0.0;
  bool converged = true;
};

PlanOutcome plan_cell(const ProblemInstance& inst, const Cell& cell,
                      const saa::SaaConfig& saacfg, bool adaptive,
                      std::uint64_t cell_seed, std::size_t plan_horizon) {
  PlanOutcome out;
  if (cell.policy == sim::Policy::SpSaa) {
    saa::SaaConfig planner = saacfg;
    planner.seed = rng::derive(cell_seed, rng::kSimPlan, 0);
    const saa::SaaReport report =
        adaptive ? saa::adaptive_run(inst, cell.model, plan_horizon, planner)
                 : saa::solve_saa(inst, cell.model, plan_horizon, planner);
    out.schedule = report.best_schedule;
    out.var_gap = report.var_gap;
    out.converged = report.converged;
    return out;
  }
  double gain = baselines::kAvgGain;
  if (cell.policy == sim::Policy::MinGain) gain = baselines::kMinGain;
  if (cell.policy == sim::Policy::MaxGain) gain = baselines::kMaxGain;
  out.schedule = baselines::fixed_gain_schedule(inst, gain, plan_horizon);
  return out;
}

}  // namespace

ProblemInstance instance_from(const config::Config& cfg) {
  ProblemInstance inst = ProblemInstance::defaults(cfg.get_size("n_nodes", 5));
  inst.hap_power = cfg.get_double("hap_power", 0.25);
  inst.consume_power = cfg.get_double("consume_power", 0.05);
  inst.efficiency = cfg.get_double("eta", 0.4);
  inst.battery_cap = cfg.get_double("battery_cap", 0.1);
  inst.slot_seconds = cfg.get_double("slot_seconds", 1.0);
  const double b0 = cfg.get_double("battery_init", 0.0);
  inst.battery_init.assign(inst.n_nodes, b0);
  try {
    inst.validate();
  } catch (const std::exception& e) {
    throw config::ConfigError(std::string("bad instance parameters: ") +
                              e.what());
  }
  return inst;
}

saa::SaaConfig saa_from(const config::Config& cfg) {
  saa::SaaConfig s;
  s.m_replications = cfg.get_size("saa.m", 8);
  s.n_scenarios = cfg.get_size("saa.n", 64);
  s.n_eval = cfg.get_size("saa.n_eval", 0);
  s.gap_variance_target = cfg.get_double("saa.gap_target", 1e-3);
  s.seed = cfg.get_u64("seed", cfg.get_u64("channel.seed", 1));
  try {
    s.validate();
  } catch (const std::exception& e) {
    throw config::ConfigError(std::string("bad saa parameters: ") + e.what());
  }
  return s;
}

std::vector<Cell> build_matrix(const config::Config& cfg) {
  const auto channels = split_list(cfg.get_string("channel.kind", "rician"));
  const auto policies = split_list(cfg.get_string("policy", "spsaa"));
  if (channels.empty() || policies.empty())
    throw config::ConfigError("channel.kind and policy must be nonempty");

  const sim::Mode mode = sim::parse_mode(cfg.get_string("mode", "multi"));
  const double base_eta = cfg.get_double("eta", 0.4);
  const std::size_t base_horizon = cfg.get_size("horizon", 1);
  const std::uint64_t base_seed = cfg.get_u64("seed", cfg.get_u64("channel.seed", 1));

  config::Sweep sweep;
  if (cfg.has("sweep")) sweep = config::Sweep::parse(cfg.get_string("sweep", ""));
  std::vector<double> sweep_values = sweep.values();
  if (sweep.key == config::Sweep::Key::None) sweep_values = {0.0};

  std::vector<Cell> cells;
  for (const std::string& token : channels) {
    ChannelModel model;
    try {
      model = channel_from_token(cfg, token);
    } catch (const std::exception& e) {
      throw config::ConfigError(std::string("bad channel spec '") + token +
                                "': " + e.what());
    }
    for (const std::string& pol : policies) {
      sim::Policy policy;
      try {
        policy = sim::parse_policy(pol);
      } catch (const std::exception& e) {
        throw config::ConfigError(e.what());
      }
      for (double v : sweep_values) {
        Cell cell;
        cell.channel_token = token;
        cell.model = model;
        cell.policy = policy;
        cell.mode = mode;
        cell.eta = base_eta;
        cell.horizon = base_horizon;
        cell.master_seed = base_seed;
        switch (sweep.key) {
          case config::Sweep::Key::Eta:
            cell.eta = v;
            break;
          case config::Sweep::Key::Horizon:
            cell.horizon = static_cast<std::size_t>(v + 0.5);
            break;
          case config::Sweep::Key::Seed:
            cell.master_seed = static_cast<std::uint64_t>(v + 0.5);
            break;
          case config::Sweep::Key::None:
            break;
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

CellResult run_cell(const config::Config& cfg, const Cell& cell) {
  ProblemInstance inst = instance_from(cfg);
  inst.efficiency = cell.eta;
  inst.validate();

  const saa::SaaConfig saacfg = saa_from(cfg);
  const bool adaptive = cfg.get_bool("saa.adaptive", false);
  const std::uint64_t cell_seed =
      rng::derive(cell.master_seed, rng::kCell, fnv1a(cell_key(cell)));

  const std::size_t plan_horizon =
      (cell.mode == sim::Mode::Multi) ? cell.horizon : 1;
  const PlanOutcome planned =
      plan_cell(inst, cell, saacfg, adaptive, cell_seed, plan_horizon);

  CellResult res;
  res.var_gap = planned.var_gap;
  res.converged = planned.converged;

  if (cell.horizon == 1) {
    const saa::Evaluation ev = saa::evaluate_schedule(
        inst, planned.schedule, cell.model, 1, saacfg.resolved_n_eval(),
        rng::derive(cell_seed, rng::kEvalScenarios));
    res.mean_idle = ev.idle_mean_per_slot;
    res.se_idle = std::sqrt(ev.idle_variance);
    res.z = planned.schedule.min_sample_time();
    res.tau = planned.schedule.tau;
    return res;
  }

  sim::SimConfig simcfg;
  simcfg.mode = cell.mode;
  simcfg.horizon = cell.horizon;
  simcfg.policy = cell.policy;
  simcfg.episodes = cfg.get_size("episodes", 100);
  simcfg.seed = cell_seed;
  simcfg.saa = saacfg;
  const sim::Summary summary =
      sim::run_with_initial_plan(inst, cell.model, simcfg, planned.schedule);
  res.mean_idle = summary.mean_idle;
  res.se_idle = summary.se_idle;
  res.z = summary.mean_z;
  res.tau = summary.mean_tau;
  return res;
}

RunOutput run(const config::Config& cfg, const std::string& out_dir) {
  const std::vector<Cell> cells = build_matrix(cfg);

  std::vector<CellResult> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  const std::size_t n_workers = std::min(worker_count(), std::max<std::size_t>(cells.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= cells.size()) return;
        try {
          results[idx] = run_cell(cfg, cells[idx]);
        } catch (...) {
          errors[idx] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& ep : errors)
    if (ep) std::rethrow_exception(ep);

  fs::create_directories(out_dir);
  RunOutput out;
  out.n_rows = cells.size();
  out.csv_path = (fs::path(out_dir) / "results.csv").string();
  out.metadata_path = (fs::path(out_dir) / "metadata.txt").string();

  std::ofstream csv(out.csv_path, std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + out.csv_path);
  csv << "distribution,policy,mode,eta,T,seed,mean_idle,se_idle,Z,tau,"
         "var_gap,converged\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    const CellResult& r = results[i];
    csv << c.channel_token << ',' << sim::policy_name(c.policy) << ','
        << (c.mode == sim::Mode::Multi ? "multi" : "single") << ','
        << format_double(c.eta) << ',' << c.horizon << ',' << c.master_seed
        << ',' << format_double(r.mean_idle) << ',' << format_double(r.se_idle)
        << ',' << format_double(r.z) << ',' << format_double(r.tau) << ','
        << format_double(r.var_gap) << ',' << (r.converged ? "true" : "false")
        << '\n';
  }
  csv.close();

  // Plot-ready series files: one file per (channel, policy, mode, metric)
  // over the sweep variable.
  config::Sweep sweep;
  if (cfg.has("sweep")) sweep = config::Sweep::parse(cfg.get_string("sweep", ""));
  if (sweep.key != config::Sweep::Key::None && !cells.empty()) {
    const fs::path series_dir = fs::path(out_dir) / "series";
    fs::create_directories(series_dir);
    struct Metric {
      const char* name;
      double CellResult::* value;
    };
    const Metric metrics[] = {{"idle", &CellResult::mean_idle},
                              {"z", &CellResult::z},
                              {"tau", &CellResult::tau}};
    std::vector<std::string> groups;
    for (const Cell& c : cells) {
      const std::string g = sanitize(c.channel_token) + "_" +
                            sim::policy_name(c.policy) + "_" +
                            (c.mode == sim::Mode::Multi ? "multi" : "single");
      if (std::find(groups.begin(), groups.end(), g) == groups.end())
        groups.push_back(g);
    }
    for (const std::string& group : groups) {
      for (const Metric& metric : metrics) {
        std::ofstream f(series_dir / ("series_" + group + "_" + metric.name +
                                      ".csv"),
                        std::ios::trunc);
        f << sweep.name() << ',' << metric.name << ",se\n";
        for (std::size_t i = 0; i < cells.size(); ++i) {
          const Cell& c = cells[i];
          const std::string g = sanitize(c.channel_token) + "_" +
                                sim::policy_name(c.policy) + "_" +
                                (c.mode == sim::Mode::Multi ? "multi" : "single");
          if (g != group) continue;
          double x = 0.0;
          switch (sweep.key) {
            case config::Sweep::Key::Eta: x = c.eta; break;
            case config::Sweep::Key::Horizon:
              x = static_cast<double>(c.horizon);
              break;
            case config::Sweep::Key::Seed:
              x = static_cast<double>(c.master_seed);
              break;
            case config::Sweep::Key::None: break;
          }
          const double se =
              (metric.value == &CellResult::mean_idle) ? results[i].se_idle : 0.0;
          f << format_double(x) << ',' << format_double(results[i].*metric.value)
            << ',' << format_double(se) << '\n';
        }
      }
    }
  }

  std::ofstream meta(out.metadata_path, std::ios::trunc);
  if (!meta) throw std::runtime_error("cannot write " + out.metadata_path);
  meta << "version=" << kVersion << '\n';
  meta << "kernels=" << kernels::active_set() << '\n';
  meta << "cells=" << cells.size() << '\n';
  for (const auto& [key, value] : cfg.values())
    meta << "config." << key << '=' << value << '\n';
  // Resolved channel descriptors, including the scale factors actually used.
  std::vector<std::string> seen;
  for (const Cell& c : cells) {
    if (std::find(seen.begin(), seen.end(), c.channel_token) != seen.end())
      continue;
    seen.push_back(c.channel_token);
    meta << "channel." << c.channel_token << '=' << c.model.describe() << '\n';
  }
  meta.close();
  return out;
}

std::string emit_surplus_histogram(const config::Config& cfg,
                                   const std::string& out_dir) {
  const std::size_t bins = cfg.get_size("surplus.bins", 40);
  const std::size_t samples = cfg.get_size("surplus.samples", 10000);
  if (bins < 2) throw config::ConfigError("surplus.bins must be >= 2");
  if (samples < 1) throw config::ConfigError("surplus.samples must be >= 1");

  ProblemInstance inst = instance_from(cfg);
  const auto channels = split_list(cfg.get_string("channel.kind", "rician"));
  const ChannelModel model = channel_from_token(cfg, channels.front());
  const sim::Policy policy =
      sim::parse_policy(cfg.get_string("policy", "spsaa"));
  const std::uint64_t seed = cfg.get_u64("seed", 1);

  Cell cell;
  cell.channel_token = channels.front();
  cell.model = model;
  cell.policy = policy;
  cell.eta = inst.efficiency;
  cell.horizon = 1;
  cell.master_seed = seed;
  const PlanOutcome planned =
      plan_cell(inst, cell, saa_from(cfg), cfg.get_bool("saa.adaptive", false),
                rng::derive(seed, rng::kCell, fnv1a(cell_key(cell))), 1);

  GainStream stream(model, rng::derive(seed, rng::kSurplus));
  std::vector<double> values;
  values.reserve(samples * inst.n_nodes);
  for (std::size_t s = 0; s < samples; ++s) {
    const Scenario scen = stream.sample_scenario(inst.n_nodes, 1);
    for (double v : recourse::surplus_energy(inst, planned.schedule, scen))
      values.push_back(v);
  }

  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (hi - lo < 1e-12) {
    lo -= 1e-9;
    hi += 1e-9;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    if (b >= bins) b = bins - 1;
    ++counts[b];
  }

  fs::create_directories(out_dir);
  const std::string path = (fs::path(out_dir) / "surplus.csv").string();
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "bin_lo,bin_hi,probability\n";
  const double total = static_cast<double>(values.size());
  for (std::size_t b = 0; b < bins; ++b) {
    f << format_double(lo + width * static_cast<double>(b)) << ','
      << format_double(lo + width * static_cast<double>(b + 1)) << ','
      << format_double(static_cast<double>(counts[b]) / total) << '\n';
  }
  return path;
}

}  // namespace wpsched::experiment
