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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rics/analog_compute.hpp"
#include "rics/design_a_throughput.hpp"
#include "rics/design_b_secrecy.hpp"
#include "rics/diffractive_onn.hpp"
#include "rics/geometry_link.hpp"
#include "rics/signal_synth.hpp"

// Experiment configuration. The text form is `key = value` lines grouped by
// `[section]` headers, `#` starts a comment. Resolution is layered: built-in
// defaults, then a file, then command-line overrides.
namespace rics {

struct Config {
  // [general]
  std::uint64_t seed = 1;
  std::string output = "out";
  unsigned workers = 1;

  // [scenario]
  double d_user_m = 60.0;
  double d_bs_m = 80.0;
  double angle_deg = 160.0;
  double d_eve_m = 50.0;
  double user_spread_deg = 2.0;
  double tx_power_dbm = 23.010299956639813;  // 200 mW
  double bandwidth_hz = 10e6;
  double noise_density_dbm_hz = -174.0;
  double carrier_hz = 3.5e9;
  double ris_exponent = 2.0;
  double direct_exponent = 3.0;
  double element_gain_dbi = 7.0;
  double leak_obstruction_db = 14.0;
  bool fading = false;
  std::size_t fading_trials = 10000;

  // [surface]
  std::vector<std::size_t> elements{20, 40, 60, 80, 100};
  std::vector<double> alphas{0.2, 0.5, 0.8};
  std::size_t n_absorb = 4;
  std::size_t sensing_elements = 60;
  double efficiency = 1.0;
  double alpha_step = 0.01;

  // [synth]
  std::size_t n_samples = 4096;
  std::size_t samples_per_symbol = 8;
  double rolloff = 0.35;
  std::size_t filter_span_symbols = 8;
  double power_spread_db = 2.0;
  std::size_t train_per_class = 500;
  std::size_t test_per_class = 200;

  // [onn]
  std::size_t layers = 2;
  std::size_t epochs = 60;
  double learning_rate = 5.0;
  std::size_t batch_size = 32;
  std::size_t lr_decay_every = 20;
  double lr_decay = 0.5;

  // [throughput]
  std::size_t frames = 1000;
  std::size_t frame_slots = 12;
  double slot_duration_s = 2e-6;
  double payload_bits = 1000.0;
  bool user_direct_path = false;
  bool emulate = true;
  std::string model_2layer = "onn_2layer.ckpt";
  std::string model_4layer = "onn_4layer.ckpt";

  // [secrecy]
  bool sender_direct_path = true;
  std::string op = "frequency_shift";
  double shift_hz = 2e6;
  std::vector<double> kernel{1.0};

  friend bool operator==(const Config&, const Config&) = default;

  [[nodiscard]] RfConstants rf() const;
  [[nodiscard]] Scenario scenario() const;
  [[nodiscard]] DatasetParams dataset_params() const;
  [[nodiscard]] RicsProfile sensing_profile() const;
  [[nodiscard]] onn::TrainOptions train_options() const;
  [[nodiscard]] analog::OperatorSpec operator_spec() const;
  [[nodiscard]] design_b::SecrecyOptions secrecy_options() const;
  [[nodiscard]] design_a::FrameParams frame_params() const;
};

/// One `section.key = value` assignment; `line` is 0 for command-line input.
struct Override {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Applies `key = value` (key is `section.key` or a bare unique key) with
/// range checks. Throws ConfigError naming the key.
void apply_setting(Config& config, const Override& setting);

/// Parses text on top of `base`. Unknown keys, malformed lines and
/// out-of-range values are rejected with the offending key and line.
[[nodiscard]] Config parse_config_text(std::string_view text, Config base = {});

/// `path == "default"` yields the built-in defaults.
[[nodiscard]] Config parse_config(const std::filesystem::path& path,
                                  const std::vector<Override>& overrides = {});

/// Cross-field checks that a single key cannot express.
void validate(const Config& config);

/// Canonical text form; parse_config_text(serialize(c)) == c.
[[nodiscard]] std::string serialize(const Config& config);

/// Section-qualified names of every recognised key, in serialization order.
[[nodiscard]] std::vector<std::string> config_keys();

}  // namespace rics
