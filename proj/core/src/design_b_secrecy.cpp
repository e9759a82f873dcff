// SPDX-License-Identifier: Apache-2.0
//
// rics-sim: simulator for reconfigurable intelligent computational surfaces
// Copyright (C) 2026 The rics-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rics/design_b_secrecy.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "rics/errors.hpp"
#include "rics/parallel.hpp"

namespace rics::design_b {
namespace {

void require_rr(const RicsProfile& profile) {
  if (profile.mode() != SurfaceMode::ReflectRefract) {
    throw ModeMismatchError("secrecy links need a reflection-refraction profile");
  }
}

struct Trial {
  double legit_cascade = 0.0;
  double eve_cascade = 0.0;
  double direct_fade = 1.0;
  double leak_fade = 1.0;
};

// One Rayleigh draw per element and hop. Phases in the profile stay relative
// to the cascade, so the aligned configuration co-phases |h1 h2| terms.
Trial draw_trial(const RicsProfile* profile, StreamKey key) {
  auto eng = key.engine();
  Trial t;
  if (profile != nullptr) {
    const std::size_t n = profile->n_elements();
    cplx reflect{0.0, 0.0};
    cplx refract{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) {
      const double h1 = std::abs(complex_gaussian(eng, 1.0));
      const double h2 = std::abs(complex_gaussian(eng, 1.0));
      const double h3 = std::abs(complex_gaussian(eng, 1.0));
      reflect += h1 * h2 * std::polar(1.0, profile->reflect_phases()[m]);
      refract += h1 * h3 * std::polar(1.0, profile->refract_phases()[m]);
    }
    t.legit_cascade = profile->alpha() * profile->efficiency() * std::norm(reflect);
    t.eve_cascade = profile->beta() * profile->efficiency() * std::norm(refract);
  }
  t.direct_fade = std::norm(complex_gaussian(eng, 1.0));
  t.leak_fade = std::norm(complex_gaussian(eng, 1.0));
  return t;
}

LinkRates faded_rates(const Scenario& s, const RicsProfile* profile, const SecrecyOptions& options,
                      StreamKey key) {
  if (options.fading_trials == 0) throw DomainError("fading needs at least one trial");
  const double g1 = s.surface_hop_gain(s.users[0], s.rics);
  const double g2 = s.surface_hop_gain(s.rics, s.bs);
  const double g3 = s.surface_hop_gain(s.rics, s.eve);
  const double direct = options.direct_path ? s.direct_gain(s.users[0], s.bs) : 0.0;
  CompensatedSum legit;
  CompensatedSum eve;
  for (std::size_t i = 0; i < options.fading_trials; ++i) {
    const Trial t = draw_trial(profile, key.derive(i));
    LinkBudget b{s.rf.tx_power_w,         s.noise_power_w(),        t.legit_cascade * g1 * g2,
                 t.eve_cascade * g1 * g3, direct * t.direct_fade,   s.leak_gain() * t.leak_fade};
    const auto r = rates_from_budget(b);
    legit.add(r.legit);
    eve.add(r.eve);
  }
  const auto n = static_cast<double>(options.fading_trials);
  return {legit.value() / n, eve.value() / n};
}

}  // namespace

LinkRates rates_from_budget(const LinkBudget& b) noexcept {
  const double snr_legit = b.tx_power_w * (b.legit_cascade + b.direct) / b.noise_w;
  const double sinr_eve = b.tx_power_w * b.leak / (b.tx_power_w * b.eve_cascade + b.noise_w);
  return {std::log2(1.0 + snr_legit), std::log2(1.0 + sinr_eve)};
}

LinkBudget link_budget(const Scenario& s, const RicsProfile& profile, const SecrecyOptions& options) {
  require_rr(profile);
  analog::validate(options.op, s.rf.bandwidth_hz);
  const double g1 = s.surface_hop_gain(s.users[0], s.rics);
  LinkBudget b;
  b.tx_power_w = s.rf.tx_power_w;
  b.noise_w = s.noise_power_w();
  b.legit_cascade = coherent_array_gain(profile, Side::Reflect, g1, s.surface_hop_gain(s.rics, s.bs));
  // The operator output keeps the refracted power but is uncorrelated with
  // the leaked waveform, so all of it counts as interference.
  b.eve_cascade = coherent_array_gain(profile, Side::Refract, g1, s.surface_hop_gain(s.rics, s.eve));
  b.direct = options.direct_path ? s.direct_gain(s.users[0], s.bs) : 0.0;
  b.leak = s.leak_gain();
  return b;
}

LinkRates link_rates(const Scenario& s, const RicsProfile& profile, const SecrecyOptions& options,
                     StreamKey key) {
  const LinkBudget b = link_budget(s, profile, options);
  if (s.rf.fading) return faded_rates(s, &profile, options, key);
  return rates_from_budget(b);
}

LinkRates baseline_rates(const Scenario& s, const SecrecyOptions& options, StreamKey key) {
  if (s.rf.fading) return faded_rates(s, nullptr, options, key);
  LinkBudget b;
  b.tx_power_w = s.rf.tx_power_w;
  b.noise_w = s.noise_power_w();
  b.direct = options.direct_path ? s.direct_gain(s.users[0], s.bs) : 0.0;
  b.leak = s.leak_gain();
  return rates_from_budget(b);
}

double secrecy_rate(double rate_legit, double rate_eve) {
  if (!(rate_legit >= 0.0) || !(rate_eve >= 0.0)) throw DomainError("rates must be non-negative");
  return std::max(0.0, rate_legit - rate_eve);
}

std::vector<SecrecyPoint> run_secrecy_experiment(const SecrecyConfig& config) {
  if (config.alphas.empty() || config.n_grid.empty()) {
    throw ConfigError(ConfigError::Kind::Missing, config.alphas.empty() ? "alpha" : "elements", 0,
                      "secrecy sweep needs non-empty alpha and element grids");
  }
  std::vector<double> alphas = config.alphas;
  std::vector<std::size_t> n_grid = config.n_grid;
  std::sort(alphas.begin(), alphas.end());
  std::sort(n_grid.begin(), n_grid.end());
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("alpha grid must lie in [0, 1]");
  }

  const StreamKey root(config.seed);
  const std::size_t n_rics = alphas.size() * n_grid.size();
  std::vector<SecrecyPoint> points(n_rics + n_grid.size());
  parallel_for(points.size(), config.workers, [&](std::size_t i) {
    SecrecyPoint p;
    LinkRates r;
    if (i < n_rics) {
      p.alpha = alphas[i / n_grid.size()];
      p.n_elements = n_grid[i % n_grid.size()];
      const auto profile = configure_rr(p.n_elements, *p.alpha, {}, {}, config.efficiency);
      const auto split = split_power(profile);
      if (split.alpha + split.beta != 1.0) throw InvalidProfileError("power split does not sum to 1");
      r = link_rates(config.scenario, profile, config.options, root.derive(p.n_elements));
    } else {
      p.n_elements = n_grid[i - n_rics];
      r = baseline_rates(config.scenario, config.options, root.derive(p.n_elements));
    }
    p.rate_legit = r.legit;
    p.rate_eve = r.eve;
    p.secrecy = secrecy_rate(r.legit, r.eve);
    points[i] = p;
  });
  return points;
}

std::vector<double> alpha_grid(double step) {
  if (!(step > 0.0 && step <= 0.5)) throw DomainError("alpha grid step must lie in (0, 0.5]");
  const auto k_max = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(k_max + 2);
  for (std::size_t k = 0; k <= k_max; ++k) grid.push_back(std::min(1.0, static_cast<double>(k) * step));
  if (grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

AlphaOptimum optimize_alpha(const Scenario& scenario, std::size_t n_elements, double grid_step,
                            const SecrecyOptions& options, double efficiency, StreamKey key) {
  AlphaOptimum best{0.0, -1.0};
  for (double a : alpha_grid(grid_step)) {
    const auto r = link_rates(scenario, configure_rr(n_elements, a, {}, {}, efficiency), options, key);
    const double s = secrecy_rate(r.legit, r.eve);
    if (s > best.secrecy) best = {a, s};
  }
  return best;
}

void write_secrecy_csv(std::ostream& os, const std::vector<SecrecyPoint>& points) {
  os << "alpha,n_elements,rate_legit,rate_eve,secrecy_rate\n";
  char buf[160];
  for (const auto& p : points) {
    if (p.alpha) {
      std::snprintf(buf, sizeof buf, "%.6g,%zu,%.12g,%.12g,%.12g\n", *p.alpha, p.n_elements,
                    p.rate_legit, p.rate_eve, p.secrecy);
    } else {
      std::snprintf(buf, sizeof buf, "baseline,%zu,%.12g,%.12g,%.12g\n", p.n_elements, p.rate_legit,
                    p.rate_eve, p.secrecy);
    }
    os << buf;
  }
}

}  // namespace rics::design_b
