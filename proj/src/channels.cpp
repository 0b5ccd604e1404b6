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

#include "wpsched/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wpsched/rng.hpp"

namespace wpsched {

namespace {

constexpr double kPi = std::numbers::pi;
// Clamping may only drag the mean this far off 0.5 before the scale factor
// gets re-tuned.
constexpr double kMeanTolerance = 0.01;

double clamp01_scaled(double raw, double scale) {
  return std::min(1.0, std::max(0.0, raw * scale));
}

double box_muller(double u1, double u2) {
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// log I0(x) for x >= 0, switching to the asymptotic expansion before
// cyl_bessel_i overflows.
double log_bessel_i0(double x) {
  if (x < 600.0) return std::log(std::cyl_bessel_i(0.0, x));
  return x - 0.5 * std::log(2.0 * kPi * x);
}

// Rician density with non-centrality nu and scatter sigma.
double rician_pdf(double r, double nu, double sigma) {
  if (r <= 0.0) return 0.0;
  const double s2 = sigma * sigma;
  const double log_f = std::log(r / s2) - (r * r + nu * nu) / (2.0 * s2) +
                       log_bessel_i0(r * nu / s2);
  return std::exp(log_f);
}

// Composite Simpson rule; integrands here are smooth.
template <class F>
double simpson(F f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i)
    acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Mean of min(scale * R, 1) for raw Rayleigh R: closed form via erf.
double rayleigh_clamped_mean(double sigma, double scale) {
  const double s = scale * sigma;  // parameter of the scaled Rayleigh
  return s * std::sqrt(kPi / 2.0) * std::erf(1.0 / (s * std::sqrt(2.0)));
}

// Mean of min(scale * R, 1) for raw Rician R, by quadrature up to the clamp
// point plus the exact tail mass.
double rician_clamped_mean(double nu, double sigma, double scale) {
  const double c = 1.0 / scale;
  const auto pdf = [&](double r) { return rician_pdf(r, nu, sigma); };
  const double below = simpson([&](double r) { return r * pdf(r); }, 0.0, c, 4000);
  const double cdf_c = simpson(pdf, 0.0, c, 4000);
  return scale * below + (1.0 - std::min(1.0, cdf_c));
}

double clamped_mean(ChannelKind kind, double param, double spread, double scale) {
  switch (kind) {
    case ChannelKind::Rayleigh:
      return rayleigh_clamped_mean(param, scale);
    case ChannelKind::Rician:
      return rician_clamped_mean(param, spread, scale);
    default:
      return 0.5;  // Gaussian clamp is symmetric about 0.5; Fixed is exempt
  }
}

// Re-tune the scale factor until the post-clamp mean sits within tolerance
// of 0.5. With the default parameters the initial factor already passes and
// no iteration happens.
double calibrate_scale(ChannelKind kind, double param, double spread,
                       double initial, bool& rescaled) {
  double scale = initial;
  rescaled = false;
  for (int iter = 0; iter < 50; ++iter) {
    const double mean = clamped_mean(kind, param, spread, scale);
    if (std::abs(mean - 0.5) <= kMeanTolerance) return scale;
    scale *= 0.5 / mean;
    rescaled = true;
  }
  throw std::runtime_error("channel scale calibration did not converge");
}

}  // namespace

ChannelModel ChannelModel::gaussian(double variance) {
  if (!(variance > 0.0))
    throw std::invalid_argument("gaussian variance must be > 0");
  ChannelModel m;
  m.kind = ChannelKind::Gaussian;
  m.param = variance;
  m.scale_factor = 1.0;
  return m;
}

ChannelModel ChannelModel::rayleigh(double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("rayleigh scale must be > 0");
  ChannelModel m;
  m.kind = ChannelKind::Rayleigh;
  m.param = scale;
  m.scale_factor =
      calibrate_scale(m.kind, m.param, 1.0, 0.5 / m.raw_mean(), m.rescaled);
  return m;
}

ChannelModel ChannelModel::rician(double noncentrality, double spread) {
  if (!(noncentrality > 0.0) || !(spread > 0.0))
    throw std::invalid_argument("rician parameters must be > 0");
  ChannelModel m;
  m.kind = ChannelKind::Rician;
  m.param = noncentrality;
  m.spread = spread;
  m.scale_factor =
      calibrate_scale(m.kind, m.param, m.spread, 0.5 / m.raw_mean(), m.rescaled);
  return m;
}

ChannelModel ChannelModel::fixed(double gain) {
  if (!(gain >= 0.0 && gain <= 1.0))
    throw std::invalid_argument("fixed gain must lie in [0,1]");
  ChannelModel m;
  m.kind = ChannelKind::Fixed;
  m.param = gain;
  m.scale_factor = 1.0;
  return m;
}

ChannelModel ChannelModel::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw std::invalid_argument("empty channel spec");
  const std::string& kind = parts[0];
  const auto num = [&](std::size_t i, double fallback) {
    if (parts.size() <= i) return fallback;
    std::size_t pos = 0;
    double v = std::stod(parts[i], &pos);
    if (pos != parts[i].size())
      throw std::invalid_argument("bad channel parameter: " + parts[i]);
    return v;
  };
  if (kind == "gaussian") return gaussian(num(1, 0.01));
  if (kind == "rayleigh") return rayleigh(num(1, 2.0));
  if (kind == "rician") return rician(num(1, 4.0), num(2, 1.0));
  if (kind == "fixed") return fixed(num(1, 0.5));
  throw std::invalid_argument("unknown channel kind: " + kind);
}

std::string ChannelModel::name() const {
  switch (kind) {
    case ChannelKind::Gaussian: return "gaussian";
    case ChannelKind::Rayleigh: return "rayleigh";
    case ChannelKind::Rician: return "rician";
    case ChannelKind::Fixed: return "fixed";
  }
  return "?";
}

std::string ChannelModel::describe() const {
  std::ostringstream os;
  os << name() << "(param=" << param;
  if (kind == ChannelKind::Rician) os << ",spread=" << spread;
  if (kind == ChannelKind::Rayleigh || kind == ChannelKind::Rician)
    os << ",scale=" << scale_factor << ",rescaled=" << (rescaled ? 1 : 0);
  os << ")";
  return os.str();
}

double ChannelModel::normalize(double raw) const {
  switch (kind) {
    case ChannelKind::Fixed:
      return param;
    case ChannelKind::Gaussian:
      return clamp01_scaled(raw, 1.0);
    default:
      return clamp01_scaled(raw, scale_factor);
  }
}

double ChannelModel::raw_mean() const {
  switch (kind) {
    case ChannelKind::Fixed:
      return param;
    case ChannelKind::Gaussian:
      return 0.5;
    case ChannelKind::Rayleigh:
      return param * std::sqrt(kPi / 2.0);
    case ChannelKind::Rician: {
      // sigma * sqrt(pi/2) * L_{1/2}(-nu^2 / (2 sigma^2)) via Bessel I0/I1.
      const double y = param * param / (2.0 * spread * spread);
      if (y > 1200.0) return std::sqrt(param * param + spread * spread);
      const double laguerre =
          std::exp(-y / 2.0) * ((1.0 + y) * std::cyl_bessel_i(0.0, y / 2.0) +
                                y * std::cyl_bessel_i(1.0, y / 2.0));
      return spread * std::sqrt(kPi / 2.0) * laguerre;
    }
  }
  return 0.0;
}

double ChannelModel::mean_calibration_error() const {
  if (kind == ChannelKind::Fixed) return 0.0;
  return clamped_mean(kind, param, spread, scale_factor) - 0.5;
}

double GainStream::next() {
  switch (model.kind) {
    case ChannelKind::Fixed:
      ++counter;
      return model.param;
    case ChannelKind::Gaussian: {
      const double u1 = rng::uniform01(seed, counter);
      const double u2 = rng::uniform01(seed, counter + 1);
      counter += 2;
      return model.normalize(0.5 + std::sqrt(model.param) * box_muller(u1, u2));
    }
    case ChannelKind::Rayleigh: {
      const double u = rng::uniform01(seed, counter);
      ++counter;
      return model.normalize(model.param * std::sqrt(-2.0 * std::log(u)));
    }
    case ChannelKind::Rician: {
      const double z1 = box_muller(rng::uniform01(seed, counter),
                                   rng::uniform01(seed, counter + 1));
      const double z2 = box_muller(rng::uniform01(seed, counter + 2),
                                   rng::uniform01(seed, counter + 3));
      counter += 4;
      return model.normalize(
          std::hypot(model.param + model.spread * z1, model.spread * z2));
    }
  }
  throw std::logic_error("unreachable channel kind");
}

Scenario GainStream::sample_scenario(std::size_t n_nodes, std::size_t horizon) {
  if (n_nodes < 1 || horizon < 1)
    throw std::invalid_argument("sample_scenario needs n_nodes,horizon >= 1");
  Scenario s;
  s.n_nodes = n_nodes;
  s.horizon = horizon;
  s.gains.resize(n_nodes * horizon);
  for (std::size_t t = 0; t < horizon; ++t)
    for (std::size_t i = 0; i < n_nodes; ++i) s.at(i, t) = next();
  return s;
}

}  // namespace wpsched
