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

#include "rics/rics_surface.hpp"

#include <cmath>
#include <complex>

#include "rics/errors.hpp"

namespace rics {
namespace {

void check_phases(const std::vector<double>& phases, std::size_t expected, const char* which) {
  if (phases.size() != expected) {
    throw InvalidProfileError(std::string(which) + " phase vector has length " +
                              std::to_string(phases.size()) + ", expected " +
                              std::to_string(expected));
  }
  for (double p : phases) {
    if (!std::isfinite(p)) throw InvalidProfileError(std::string(which) + " phase is not finite");
  }
}

void check_efficiency(double eff) {
  if (!(eff > 0.0 && eff <= 1.0)) throw InvalidProfileError("element efficiency must lie in (0, 1]");
}

}  // namespace

RicsProfile configure_ra(std::size_t n_elements, std::size_t n_absorb,
                         std::vector<double> reflect_phases, double efficiency) {
  if (n_absorb == 0) throw InvalidProfileError("RA mode needs at least one semi-active element");
  if (n_absorb >= n_elements) {
    throw InvalidProfileError("RA mode needs n_absorb < n_elements (no reflectors left)");
  }
  check_efficiency(efficiency);
  const std::size_t n_reflect = n_elements - n_absorb;
  if (reflect_phases.empty()) reflect_phases.assign(n_reflect, 0.0);
  check_phases(reflect_phases, n_reflect, "reflect");

  RicsProfile p;
  p.n_elements_ = n_elements;
  p.mode_ = SurfaceMode::ReflectAbsorb;
  p.alpha_ = 1.0;
  p.n_absorb_ = n_absorb;
  p.efficiency_ = efficiency;
  p.reflect_phases_ = std::move(reflect_phases);
  return p;
}

RicsProfile configure_rr(std::size_t n_elements, double alpha, std::vector<double> reflect_phases,
                         std::vector<double> refract_phases, double efficiency) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (n_elements == 0) throw InvalidProfileError("surface needs at least one element");
  check_efficiency(efficiency);
  if (reflect_phases.empty()) reflect_phases.assign(n_elements, 0.0);
  if (refract_phases.empty()) refract_phases.assign(n_elements, 0.0);
  check_phases(reflect_phases, n_elements, "reflect");
  check_phases(refract_phases, n_elements, "refract");

  RicsProfile p;
  p.n_elements_ = n_elements;
  p.mode_ = SurfaceMode::ReflectRefract;
  p.alpha_ = alpha;
  p.n_absorb_ = 0;
  p.efficiency_ = efficiency;
  p.reflect_phases_ = std::move(reflect_phases);
  p.refract_phases_ = std::move(refract_phases);
  return p;
}

std::size_t RicsProfile::serving_elements(Side side) const {
  if (mode_ == SurfaceMode::ReflectAbsorb) {
    if (side == Side::Refract) throw ModeMismatchError("RA profile has no refracting side");
    return n_elements_ - n_absorb_;
  }
  return n_elements_;
}

double RicsProfile::sensing_combining_gain() const {
  if (mode_ != SurfaceMode::ReflectAbsorb) {
    throw ModeMismatchError("sensing requires an RA profile");
  }
  return static_cast<double>(n_absorb_);
}

PowerSplit split_power(const RicsProfile& profile) noexcept {
  return {profile.alpha(), profile.beta()};
}

double coherent_array_gain(const RicsProfile& profile, Side side, double hop1_gain,
                           double hop2_gain) {
  if (!(hop1_gain > 0.0 && hop1_gain <= 1.0) || !(hop2_gain > 0.0 && hop2_gain <= 1.0)) {
    throw DomainError("hop gains must lie in (0, 1]");
  }
  if (profile.mode() == SurfaceMode::ReflectAbsorb && side == Side::Refract) {
    throw ModeMismatchError("RA profile has no refracting side");
  }
  const auto phases = side == Side::Reflect ? profile.reflect_phases() : profile.refract_phases();
  const double split = side == Side::Reflect ? profile.alpha() : profile.beta();

  std::complex<double> field{0.0, 0.0};
  for (double phi : phases) field += std::polar(1.0, phi);
  return split * profile.efficiency() * std::norm(field) * hop1_gain * hop2_gain;
}

}  // namespace rics
