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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpsched::config {

/// Bad key, bad value, or unreadable file. The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key=value settings with dotted section names. '#' starts a comment.
/// Unknown keys are rejected by name.
class Config {
 public:
  static Config from_file(const std::string& path);
  static const std::vector<std::string>& known_keys();

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const;
  std::size_t get_size(const std::string& key, std::size_t dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Inclusive arithmetic sweep over one key ("eta", "horizon"/"T", "seed").
/// Text form: key=a:b:step. A descending range is empty.
struct Sweep {
  enum class Key { None, Eta, Horizon, Seed };
  Key key = Key::None;
  double from = 0.0, to = 0.0, step = 1.0;

  static Sweep parse(const std::string& text);
  std::vector<double> values() const;
  const char* name() const;
};

}  // namespace wpsched::config
