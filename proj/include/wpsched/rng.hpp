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

namespace wpsched::rng {

// Counter-advanced generator (splitmix64 over a Weyl sequence). A draw is a
// pure function of (seed, counter), so streams can be split by seed and
// replayed from any index; workers derive disjoint child streams by mixing
// tag words into the seed instead of sharing state.

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
  return mix64(seed + counter * 0x9E3779B97F4A7C15ull);
}

// Uniform draw in the open interval (0,1); never returns 0 or 1, so it is
// safe inside log() and Box-Muller.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return (static_cast<double>(at(seed, counter) >> 11) + 0.5) * 0x1.0p-53;
}

// Child-stream derivation. Tags identify the purpose of a stream (solve,
// evaluate, simulate, ...); indices identify replications within a purpose.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
  return mix64(mix64(seed) ^ mix64(tag ^ 0xC2B2AE3D27D4EB4Full));
}

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t tag,
                            std::uint64_t index) {
  return mix64(derive(seed, tag) + mix64(index));
}

// Stream purpose tags.
enum Tag : std::uint64_t {
  kSolveScenarios = 1,  // per-replication SAA scenario bundles
  kEvalScenarios = 2,   // candidate-evaluation scenario sets
  kSimGains = 3,        // realized gains inside simulator episodes
  kSimPlan = 4,         // per-slot planner seeds in Single mode
  kCell = 5,            // experiment-matrix cell seeds
  kAdaptive = 6,        // adaptive SAA outer iterations
  kSurplus = 7,         // surplus-histogram sampling
};

}  // namespace wpsched::rng
