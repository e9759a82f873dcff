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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rics/analog_compute.hpp"
#include "rics/geometry_link.hpp"
#include "rics/rics_surface.hpp"
#include "rics/rng.hpp"

// Reflect/refract secrecy experiment: the sender (U1) serves the BS through
// the reflected share of the surface while the refracted share, transformed
// by an analog operator, lands on the eavesdropper as interference.
namespace rics::design_b {

struct LinkRates {
  double legit = 0.0;  // bps/Hz
  double eve = 0.0;    // bps/Hz
};

struct SecrecyOptions {
  bool direct_path = true;  // sender->receiver line of sight
  analog::OperatorSpec op{analog::OperatorKind::FrequencyShift, {}, 2e6};
  std::size_t fading_trials = 10000;  // used when scenario.rf.fading is set
};

/// Linear power gains of the four links involved. Cascades already include
/// the split fraction and the array gain.
struct LinkBudget {
  double tx_power_w = 0.0;
  double noise_w = 0.0;
  double legit_cascade = 0.0;  // sender -> RICS -> receiver (reflected)
  double eve_cascade = 0.0;    // sender -> RICS -> eavesdropper (refracted)
  double direct = 0.0;         // sender -> receiver
  double leak = 0.0;           // sender -> eavesdropper
};

/// SNR_B = P (legit_cascade + direct) / N0,
/// SINR_E = P leak / (P eve_cascade + N0); rates are log2(1 + .).
[[nodiscard]] LinkRates rates_from_budget(const LinkBudget& budget) noexcept;

/// Deterministic budget with phases as configured in the profile.
[[nodiscard]] LinkBudget link_budget(const Scenario& scenario, const RicsProfile& profile,
                                     const SecrecyOptions& options);

/// Rates for an RR profile. With fading enabled the rates are averaged over
/// options.fading_trials independent Rayleigh draws from `key`.
[[nodiscard]] LinkRates link_rates(const Scenario& scenario, const RicsProfile& profile,
                                   const SecrecyOptions& options, StreamKey key = StreamKey(0));

/// The same links with no surface at all.
[[nodiscard]] LinkRates baseline_rates(const Scenario& scenario, const SecrecyOptions& options,
                                       StreamKey key = StreamKey(0));

/// max(0, legit - eve).
[[nodiscard]] double secrecy_rate(double rate_legit, double rate_eve);

struct SecrecyPoint {
  std::optional<double> alpha;  // empty for the no-RICS baseline
  std::size_t n_elements = 0;
  double rate_legit = 0.0;
  double rate_eve = 0.0;
  double secrecy = 0.0;
};

struct SecrecyConfig {
  Scenario scenario;
  std::vector<double> alphas;
  std::vector<std::size_t> n_grid;
  double efficiency = 1.0;
  SecrecyOptions options;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Sweep sorted by alpha then N, followed by one baseline row per N.
[[nodiscard]] std::vector<SecrecyPoint> run_secrecy_experiment(const SecrecyConfig& config);

struct AlphaOptimum {
  double alpha = 1.0;
  double secrecy = 0.0;
};

/// Grid {0, step, 2*step, ..., 1}; lowest alpha wins ties.
[[nodiscard]] std::vector<double> alpha_grid(double step);
[[nodiscard]] AlphaOptimum optimize_alpha(const Scenario& scenario, std::size_t n_elements,
                                          double grid_step, const SecrecyOptions& options = {},
                                          double efficiency = 1.0, StreamKey key = StreamKey(0));

// CSV `alpha,n_elements,rate_legit,rate_eve,secrecy_rate`; baseline rows
// carry the literal `baseline` in the alpha column.
void write_secrecy_csv(std::ostream& os, const std::vector<SecrecyPoint>& points);

}  // namespace rics::design_b
