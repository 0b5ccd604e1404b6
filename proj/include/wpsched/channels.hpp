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

#include "wpsched/model.hpp"

namespace wpsched {

enum class ChannelKind { Gaussian, Rayleigh, Rician, Fixed };

/// Parametric gain distribution, normalized so draws land in [0,1] with mean
/// 0.5: the Gaussian is parameterized directly at mean 0.5 and clamped; the
/// Rayleigh/Rician raw draw is multiplied by an affine scale factor
/// (0.5 / analytic raw mean) and clamped. If clamping were to drag the mean
/// off 0.5 by more than 0.01, construction re-tunes the scale factor by
/// fixed-point iteration on the quadrature mean (`rescaled` records that).
struct ChannelModel {
  ChannelKind kind = ChannelKind::Fixed;
  double param = 0.5;    // Gaussian: variance; Rayleigh: scale; Rician:
                         // non-centrality; Fixed: the constant gain
  double spread = 1.0;   // Rician scatter sigma
  double scale_factor = 1.0;
  bool rescaled = false;

  static ChannelModel gaussian(double variance = 0.01);
  static ChannelModel rayleigh(double scale = 2.0);
  static ChannelModel rician(double noncentrality = 4.0, double spread = 1.0);
  static ChannelModel fixed(double gain);

  // Accepts "gaussian", "rayleigh", "rician", "fixed:0.5", "gaussian:0.01",
  // "rician:4:1", ... Throws std::invalid_argument on anything else.
  static ChannelModel parse(const std::string& text);

  std::string name() const;        // distribution label for reports
  std::string describe() const;    // name plus resolved parameters

  // Map one raw draw from the underlying distribution into [0,1].
  double normalize(double raw) const;

  // Analytic mean of the raw (pre-scaling) distribution.
  double raw_mean() const;

  // Post-clamp mean minus 0.5, computed by quadrature (0 for Fixed).
  double mean_calibration_error() const;
};

/// Deterministic, seed-splittable stream of normalized gains. Identical
/// (model, seed) reproduces the identical sequence bit-for-bit. Single-owner:
/// concurrent workers derive their own streams via rng::derive instead of
/// sharing one.
struct GainStream {
  ChannelModel model;
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  GainStream() = default;
  GainStream(ChannelModel m, std::uint64_t s) : model(m), seed(s) {}

  double next();

  // n_nodes x horizon matrix of i.i.d. draws, filled slot-major.
  Scenario sample_scenario(std::size_t n_nodes, std::size_t horizon);
};

}  // namespace wpsched
