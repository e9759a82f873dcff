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

#include <cstddef>
#include <span>
#include <vector>

namespace rics {

enum class SurfaceMode {
  ReflectAbsorb,   // RA: passive reflectors plus a few semi-active sensing elements
  ReflectRefract,  // RR: every element splits power between the two sides
};

enum class Side { Reflect, Refract };

struct PowerSplit {
  double alpha;  // reflected fraction
  double beta;   // refracted fraction
};

/// Immutable surface configuration. Build through configure_ra/configure_rr.
class RicsProfile {
 public:
  [[nodiscard]] std::size_t n_elements() const noexcept { return n_elements_; }
  [[nodiscard]] SurfaceMode mode() const noexcept { return mode_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double beta() const noexcept { return 1.0 - alpha_; }
  [[nodiscard]] std::size_t n_absorb() const noexcept { return n_absorb_; }
  [[nodiscard]] double efficiency() const noexcept { return efficiency_; }
  [[nodiscard]] std::span<const double> reflect_phases() const noexcept { return reflect_phases_; }
  [[nodiscard]] std::span<const double> refract_phases() const noexcept { return refract_phases_; }

  /// Elements that serve the given side (N - n_absorb reflectors in RA mode).
  [[nodiscard]] std::size_t serving_elements(Side side) const;

  /// Coherent SNR gain of combining the semi-active elements (RA only).
  [[nodiscard]] double sensing_combining_gain() const;

 private:
  friend RicsProfile configure_ra(std::size_t, std::size_t, std::vector<double>, double);
  friend RicsProfile configure_rr(std::size_t, double, std::vector<double>, std::vector<double>,
                                  double);

  RicsProfile() = default;

  std::size_t n_elements_ = 0;
  SurfaceMode mode_ = SurfaceMode::ReflectAbsorb;
  double alpha_ = 1.0;
  std::size_t n_absorb_ = 0;
  double efficiency_ = 1.0;
  std::vector<double> reflect_phases_;
  std::vector<double> refract_phases_;
};

/// Reflection-absorption profile: `n_absorb` sensing elements, the rest
/// reflect with `reflect_phases` (length n_elements - n_absorb, or empty for
/// phases aligned to the cascade).
[[nodiscard]] RicsProfile configure_ra(std::size_t n_elements, std::size_t n_absorb,
                                       std::vector<double> reflect_phases = {},
                                       double efficiency = 1.0);

/// Reflection-refraction profile with reflected power fraction `alpha`.
[[nodiscard]] RicsProfile configure_rr(std::size_t n_elements, double alpha,
                                       std::vector<double> reflect_phases = {},
                                       std::vector<double> refract_phases = {},
                                       double efficiency = 1.0);

[[nodiscard]] PowerSplit split_power(const RicsProfile& profile) noexcept;

/// Cascaded power gain through one side of the surface:
/// split * efficiency * |sum_m exp(j phi_m)|^2 * hop1 * hop2.
/// Phases are relative to the cascade, so all-equal phases are aligned and
/// give the M^2 array law.
[[nodiscard]] double coherent_array_gain(const RicsProfile& profile, Side side, double hop1_gain,
                                         double hop2_gain);

}  // namespace rics
