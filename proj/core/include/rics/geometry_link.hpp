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

#include <array>
#include <cmath>

namespace rics {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

[[nodiscard]] inline double distance(Point2 a, Point2 b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

[[nodiscard]] inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
[[nodiscard]] inline double linear_to_db(double lin) noexcept { return 10.0 * std::log10(lin); }
[[nodiscard]] inline double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }
[[nodiscard]] inline double watts_to_dbm(double w) noexcept { return 10.0 * std::log10(w) + 30.0; }

/// Radio constants shared by every link in a scenario (SI units).
struct RfConstants {
  double tx_power_w = 0.2;
  double bandwidth_hz = 10e6;
  double noise_density_dbm_hz = -174.0;
  double carrier_hz = 3.5e9;
  double ris_exponent = 2.0;     // hops that touch the surface
  double direct_exponent = 3.0;  // sender->BS and sender->eavesdropper paths
  double element_gain_dbi = 0.0;  // per-element pattern gain, applied on each surface hop
  double leak_obstruction_db = 0.0;  // extra loss on the sender->eavesdropper path
  bool fading = false;
};

/// Node placement in the plane. The surface lies on the x axis with the RICS
/// at the origin; the reflection side is y >= 0 and the refraction side y <= 0.
struct Scenario {
  std::array<Point2, 3> users{};
  Point2 rics{};
  Point2 bs{};
  Point2 eve{};
  RfConstants rf{};

  [[nodiscard]] double noise_power_w() const;
  /// Surface-hop gain including the element pattern gain.
  [[nodiscard]] double surface_hop_gain(Point2 a, Point2 b) const;
  [[nodiscard]] double direct_gain(Point2 a, Point2 b) const;
  /// Sender (U1) to eavesdropper, including the obstruction loss.
  [[nodiscard]] double leak_gain() const;
};

/// Places the RICS at the origin, all users `d_user` away, the BS `d_bs` away
/// with `angle_deg` separation from U1 measured at the RICS, and the
/// eavesdropper `d_eve` behind the surface on the continuation of U1's
/// incidence direction. U2 and U3 sit `user_spread_deg` and twice that closer
/// to the BS bearing so that every pairwise distance is positive.
[[nodiscard]] Scenario place_scenario(double d_user, double d_bs, double angle_deg, double d_eve,
                                      const RfConstants& rf, double user_spread_deg = 2.0);

/// Log-distance path gain anchored at free space with a 1 m reference.
[[nodiscard]] double path_gain(double d_m, double f_hz, double exponent);

/// Thermal noise power in watts for a density in dBm/Hz over `bandwidth_hz`.
[[nodiscard]] double noise_power(double density_dbm_hz, double bandwidth_hz);
[[nodiscard]] double noise_power_dbm(double density_dbm_hz, double bandwidth_hz);

}  // namespace rics
