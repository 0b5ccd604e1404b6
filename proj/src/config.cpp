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

#include "wpsched/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace wpsched::config {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = {
      "seed",          "eta",           "policy",        "out",
      "mode",          "horizon",       "episodes",      "sweep",
      "n_nodes",       "hap_power",     "consume_power", "battery_cap",
      "battery_init",  "slot_seconds",  "channel.kind",  "channel.param",
      "channel.spread", "channel.seed", "saa.m",         "saa.n",
      "saa.n_eval",    "saa.gap_target", "saa.adaptive", "surplus.bins",
      "surplus.samples",
  };
  return keys;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  Config cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end())
    throw ConfigError("unknown config key: " + key);
  values_[key] = value;
}

bool Config::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string Config::get_string(const std::string& key,
                               const std::string& dflt) const {
  const auto it = values_.find(key);
  return it == values_.end() ? dflt : it->second;
}

double Config::get_double(const std::string& key, double dflt) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": bad number '" + it->second + "'");
  }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t dflt) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": bad integer '" + it->second + "'");
  }
}

std::size_t Config::get_size(const std::string& key, std::size_t dflt) const {
  return static_cast<std::size_t>(get_u64(key, dflt));
}

bool Config::get_bool(const std::string& key, bool dflt) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  const std::string& v = it->second;
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config key " + key + ": bad boolean '" + v + "'");
}

Sweep Sweep::parse(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ConfigError("sweep must look like key=from:to:step, got '" + text + "'");
  const std::string key = trim(text.substr(0, eq));
  Sweep sw;
  if (key == "eta")
    sw.key = Key::Eta;
  else if (key == "horizon" || key == "T")
    sw.key = Key::Horizon;
  else if (key == "seed")
    sw.key = Key::Seed;
  else
    throw ConfigError("sweep key must be eta, horizon/T or seed, got '" + key + "'");

  const std::string range = text.substr(eq + 1);
  double parts[3];
  std::size_t start = 0;
  for (int p = 0; p < 3; ++p) {
    const auto colon = range.find(':', start);
    const bool last = (p == 2);
    if (last != (colon == std::string::npos))
      throw ConfigError("sweep range must be from:to:step, got '" + range + "'");
    const std::string tok =
        range.substr(start, last ? std::string::npos : colon - start);
    try {
      std::size_t pos = 0;
      parts[p] = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ConfigError("sweep range: bad number '" + tok + "'");
    }
    start = colon + 1;
  }
  sw.from = parts[0];
  sw.to = parts[1];
  sw.step = parts[2];
  if (!(sw.step > 0.0)) throw ConfigError("sweep step must be > 0");
  return sw;
}

std::vector<double> Sweep::values() const {
  if (key == Key::None) return {};
  std::vector<double> out;
  if (to + 1e-12 < from) return out;  // descending range is empty
  const auto count =
      static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
  out.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k)
    out.push_back(from + static_cast<double>(k) * step);
  return out;
}

const char* Sweep::name() const {
  switch (key) {
    case Key::None: return "none";
    case Key::Eta: return "eta";
    case Key::Horizon: return "horizon";
    case Key::Seed: return "seed";
  }
  return "?";
}

}  // namespace wpsched::config
