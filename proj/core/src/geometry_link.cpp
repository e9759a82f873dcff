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

#include "rics/geometry_link.hpp"

#include <numbers>

#include "rics/errors.hpp"

namespace rics {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Point2 polar(double r, double bearing_deg) {
  return {r * std::cos(bearing_deg * kDeg), r * std::sin(bearing_deg * kDeg)};
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidGeometryError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

double path_gain(double d_m, double f_hz, double exponent) {
  if (!(d_m > 0.0)) throw DomainError("path_gain: distance must be positive");
  if (!(f_hz > 0.0)) throw DomainError("path_gain: frequency must be positive");
  if (!(exponent >= 2.0)) throw DomainError("path_gain: exponent must be >= 2");
  constexpr double kReferenceM = 1.0;
  const double loss_db = 20.0 * std::log10(f_hz) + 10.0 * exponent * std::log10(d_m) - 147.55 +
                         10.0 * (exponent - 2.0) * std::log10(kReferenceM);
  return db_to_linear(-loss_db);
}

double noise_power_dbm(double density_dbm_hz, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("noise_power: bandwidth must be positive");
  return density_dbm_hz + 10.0 * std::log10(bandwidth_hz);
}

double noise_power(double density_dbm_hz, double bandwidth_hz) {
  return dbm_to_watts(noise_power_dbm(density_dbm_hz, bandwidth_hz));
}

double Scenario::noise_power_w() const {
  return noise_power(rf.noise_density_dbm_hz, rf.bandwidth_hz);
}

double Scenario::surface_hop_gain(Point2 a, Point2 b) const {
  return path_gain(distance(a, b), rf.carrier_hz, rf.ris_exponent) * db_to_linear(rf.element_gain_dbi);
}

double Scenario::direct_gain(Point2 a, Point2 b) const {
  return path_gain(distance(a, b), rf.carrier_hz, rf.direct_exponent);
}

double Scenario::leak_gain() const {
  return direct_gain(users[0], eve) * db_to_linear(-rf.leak_obstruction_db);
}

Scenario place_scenario(double d_user, double d_bs, double angle_deg, double d_eve,
                        const RfConstants& rf, double user_spread_deg) {
  require_positive(d_user, "user-RICS distance");
  require_positive(d_bs, "RICS-BS distance");
  require_positive(d_eve, "RICS-eavesdropper distance");
  if (!(angle_deg > 0.0 && angle_deg < 360.0)) {
    throw InvalidGeometryError("incident angle must lie in (0, 360) degrees");
  }
  if (!(rf.tx_power_w > 0.0) || !(rf.bandwidth_hz > 0.0) || !(rf.carrier_hz > 0.0)) {
    throw InvalidGeometryError("tx power, bandwidth and carrier must be positive");
  }
  // The separation is the angle between the two bearing vectors; beyond 180
  // degrees it is the same geometry measured the other way round.
  const double sep = angle_deg <= 180.0 ? angle_deg : 360.0 - angle_deg;
  if (!(user_spread_deg >= 0.0) || (user_spread_deg > 0.0 && 2.0 * user_spread_deg >= sep)) {
    throw InvalidGeometryError("user spread must be non-negative and smaller than half the separation");
  }

  Scenario s;
  s.rf = rf;
  // Bisector of the user/BS bearings is the surface normal (+y).
  const double user_bearing = 90.0 + sep / 2.0;
  for (std::size_t u = 0; u < s.users.size(); ++u) {
    s.users[u] = polar(d_user, user_bearing - static_cast<double>(u) * user_spread_deg);
  }
  s.bs = polar(d_bs, 90.0 - sep / 2.0);
  s.eve = polar(d_eve, user_bearing + 180.0);

  // Collinear placements put nodes on the surface plane itself; allow that
  // but reject anything strictly on the wrong side.
  constexpr double kTol = 1e-9;
  for (const auto& u : s.users) {
    if (u.y < -kTol) throw InvalidGeometryError("users must be on the reflection side");
  }
  if (s.bs.y < -kTol) throw InvalidGeometryError("BS must be on the reflection side");
  if (s.eve.y > kTol) throw InvalidGeometryError("eavesdropper must be on the refraction side");

  const std::array<Point2, 6> nodes{s.users[0], s.users[1], s.users[2], s.rics, s.bs, s.eve};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (!(distance(nodes[i], nodes[j]) > 0.0)) {
        throw InvalidGeometryError("coincident nodes in scenario");
      }
    }
  }
  return s;
}

}  // namespace rics
