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
#include <filesystem>
#include <string_view>
#include <vector>

#include "rics/complex_signal.hpp"
#include "rics/geometry_link.hpp"
#include "rics/rics_surface.hpp"
#include "rics/rng.hpp"

namespace rics {

inline constexpr std::size_t kNumClasses = 8;
inline constexpr std::size_t kNumUsers = 3;

/// Spectrum occupancy over the three users. The enumerator order is the
/// class index used everywhere (detector region k reads class k).
enum class SpectrumClass : std::uint8_t { Idle, U1, U2, U3, U1U2, U1U3, U2U3, U1U2U3 };

using Activity = std::array<bool, kNumUsers>;

[[nodiscard]] Activity activity(SpectrumClass c) noexcept;
[[nodiscard]] SpectrumClass from_activity(const Activity& a) noexcept;
[[nodiscard]] std::size_t active_users(SpectrumClass c) noexcept;
[[nodiscard]] std::size_t class_index(SpectrumClass c) noexcept;
[[nodiscard]] SpectrumClass class_from_index(std::size_t i);
[[nodiscard]] std::string_view class_name(SpectrumClass c) noexcept;
[[nodiscard]] SpectrumClass parse_class(std::string_view name);

/// Max-normalized spectrogram: rows are time segments, columns are frequency
/// bins from -fs/2 upward.
struct SpectrumImage {
  static constexpr std::size_t kSide = 16;
  std::size_t side = kSide;
  std::vector<double> pixels = std::vector<double>(kSide * kSide, 0.0);

  [[nodiscard]] double at(std::size_t row, std::size_t col) const { return pixels[row * side + col]; }
};

struct SynthParams {
  double sample_rate_hz = 10e6;
  double noise_power_w = 0.0;  // noise floor added by gen_class_signal
  std::array<double, kNumUsers> subband_offsets_hz{-3e6, 0.0, 3e6};
  std::size_t samples_per_symbol = 8;
  double rolloff = 0.35;
  std::size_t filter_span_symbols = 8;
  double power_spread_db = 0.0;  // per-user received level drawn uniformly in +-spread
};

/// Root-raised-cosine taps normalized to sum(h^2) == samples_per_symbol.
[[nodiscard]] std::vector<double> rrc_taps(std::size_t samples_per_symbol, double rolloff,
                                           std::size_t span_symbols);

/// Pulse-shaped QPSK of user `user` mixed to its subband, mean power
/// `power_w` times the user's random level offset.
[[nodiscard]] ComplexSignal user_waveform(std::size_t user, double power_w, std::size_t n_samples,
                                          const SynthParams& params, StreamKey key);
[[nodiscard]] ComplexSignal noise_waveform(std::size_t n_samples, const SynthParams& params,
                                           StreamKey key);

struct LabeledSignal {
  ComplexSignal signal;
  SpectrumClass label;
};

/// Superposition of the active users' waveforms plus the noise floor. User u
/// draws from key.derive(u) and the noise from key.derive(kNumUsers), so a
/// multi-user class is the sum of its single-user components.
[[nodiscard]] LabeledSignal gen_class_signal(SpectrumClass c, double per_user_power_w,
                                             std::size_t n_samples, const SynthParams& params,
                                             StreamKey key);

/// I/Q seen by the semi-active elements: user->RICS hop gain, coherent
/// combining over the n_absorb elements and per-element thermal noise.
[[nodiscard]] ComplexSignal capture_iq(const ComplexSignal& sig, const RicsProfile& profile,
                                       const Scenario& scenario, StreamKey key);

[[nodiscard]] SpectrumImage visualize(const ComplexSignal& iq);

struct Example {
  SpectrumImage image;
  SpectrumClass label;
};

using Dataset = std::vector<Example>;

struct DatasetParams {
  SynthParams synth;
  double per_user_power_w = 0.2;
  std::size_t n_samples = 4096;
};

/// Class of example `index` in a dataset (classes interleave).
[[nodiscard]] SpectrumClass dataset_class(std::size_t index) noexcept;

/// The capture behind example `index`; make_dataset visualizes exactly this.
[[nodiscard]] LabeledSignal make_capture(std::size_t index, const RicsProfile& profile,
                                         const Scenario& scenario, const DatasetParams& params,
                                         StreamKey key);

/// 8 * n_per_class class-balanced examples. Deterministic for a key and
/// independent of `workers`.
[[nodiscard]] Dataset make_dataset(std::size_t n_per_class, const RicsProfile& profile,
                                   const Scenario& scenario, const DatasetParams& params,
                                   StreamKey key, unsigned workers = 1);

// On-disk dataset: signal_NNNNN.bin per capture, manifest.csv with
// `index,class_label` lines and images.bin holding H*W f64 per image.
void write_dataset(const std::filesystem::path& dir, std::size_t n_per_class,
                   const RicsProfile& profile, const Scenario& scenario,
                   const DatasetParams& params, StreamKey key, unsigned workers = 1);
[[nodiscard]] Dataset read_dataset(const std::filesystem::path& dir);

}  // namespace rics
