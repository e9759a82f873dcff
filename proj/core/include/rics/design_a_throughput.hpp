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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "rics/diffractive_onn.hpp"
#include "rics/geometry_link.hpp"
#include "rics/rics_surface.hpp"
#include "rics/signal_synth.hpp"

// Inference-driven TDMA over the reflection-absorption surface versus a
// conventional surface with a fixed slot plan.
namespace rics::design_a {

using SlotAllocation = std::array<std::size_t, kNumUsers>;

/// Equal split among the users the class marks active, remainder to the
/// lowest index. Idle allocates nothing.
[[nodiscard]] SlotAllocation allocate_slots(SpectrumClass inferred, std::size_t frame_slots);

/// Equal thirds regardless of traffic, remainder to the lowest index.
[[nodiscard]] SlotAllocation allocate_static(std::size_t frame_slots);

struct FrameParams {
  std::size_t frame_slots = 12;
  double slot_duration_s = 2e-6;
  double payload_bits = 1000.0;
  bool direct_path = false;  // user->BS line of sight

  [[nodiscard]] double frame_duration_s() const noexcept {
    return static_cast<double>(frame_slots) * slot_duration_s;
  }
};

struct FrameOutcome {
  SpectrumClass true_class = SpectrumClass::Idle;
  SpectrumClass inferred_class = SpectrumClass::Idle;
  SlotAllocation allocation{};
  std::array<double, kNumUsers> delivered_bits{};

  [[nodiscard]] double total_bits() const noexcept {
    return delivered_bits[0] + delivered_bits[1] + delivered_bits[2];
  }
};

/// SNR of user u at the BS through the reflecting side of `profile`.
[[nodiscard]] double user_snr(const Scenario& scenario, const RicsProfile& profile, std::size_t user,
                              const FrameParams& frame);

/// Bits delivered by each truly active user with s > 0 slots:
/// min(payload, s * slot * B * log2(1 + SNR)).
[[nodiscard]] std::array<double, kNumUsers> frame_bits(SpectrumClass true_class,
                                                       const SlotAllocation& allocation,
                                                       const Scenario& scenario,
                                                       const RicsProfile& profile,
                                                       const FrameParams& frame);

[[nodiscard]] double frame_throughput(SpectrumClass true_class, const SlotAllocation& allocation,
                                      const Scenario& scenario, const RicsProfile& profile,
                                      const FrameParams& frame);

enum class Scheme : std::uint8_t { RisStatic, Rics2Layer, Rics4Layer, RicsPerfect };
inline constexpr std::array<Scheme, 4> kSchemes{Scheme::RisStatic, Scheme::Rics2Layer,
                                                Scheme::Rics4Layer, Scheme::RicsPerfect};
[[nodiscard]] std::string_view scheme_name(Scheme s) noexcept;

/// Where the RICS schemes get their per-frame class estimate from.
struct InferenceSource {
  bool emulate = true;
  // Emulation: per-scheme confusion matrices (2-layer, 4-layer).
  std::array<onn::ConfusionMatrix, 2> confusion{};
  // Model mode: trained models run on a fresh capture every frame.
  std::array<std::optional<onn::DiffractiveModel>, 2> models;
  DatasetParams capture;  // synthesis settings for model mode
};

struct ThroughputConfig {
  Scenario scenario;
  std::vector<std::size_t> n_grid{20, 40, 60, 80, 100};
  std::size_t n_absorb = 4;
  double efficiency = 1.0;
  std::size_t frames = 1000;
  FrameParams frame;
  InferenceSource inference;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct CurvePoint {
  Scheme scheme = Scheme::RisStatic;
  std::size_t n_elements = 0;
  double mean_bps = 0.0;
  double ci95_bps = 0.0;
};

struct ThroughputResult {
  std::vector<CurvePoint> points;  // scheme-major, then N ascending
  /// Per-frame throughput (bps), samples[scheme][n_index][frame].
  std::array<std::vector<std::vector<double>>, kSchemes.size()> samples;
};

/// Monte Carlo over frames. Every frame draws its true class (uniform) and
/// inferences from its own substream, shared across schemes and N.
[[nodiscard]] ThroughputResult run_throughput_experiment(const ThroughputConfig& config);

/// Emulated inference: sample a class from the confusion row of `truth`.
/// The diagonal owns [0, row[truth]), the other classes follow in index
/// order, so a shared u01 couples two matrices monotonically.
[[nodiscard]] SpectrumClass sample_inference(const onn::ConfusionMatrix& confusion,
                                             SpectrumClass truth, double u01);

void write_throughput_csv(std::ostream& os, const std::vector<CurvePoint>& points);

}  // namespace rics::design_a
