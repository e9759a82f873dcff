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

#include "rics/signal_synth.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "rics/errors.hpp"
#include "rics/fft.hpp"
#include "rics/parallel.hpp"

namespace rics {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<Activity, kNumClasses> kActivity{{
    {false, false, false},
    {true, false, false},
    {false, true, false},
    {false, false, true},
    {true, true, false},
    {true, false, true},
    {false, true, true},
    {true, true, true},
}};

constexpr std::array<std::string_view, kNumClasses> kNames{"Idle", "U1",   "U2",   "U3",
                                                           "U1U2", "U1U3", "U2U3", "U1U2U3"};

}  // namespace

Activity activity(SpectrumClass c) noexcept { return kActivity[class_index(c)]; }

SpectrumClass from_activity(const Activity& a) noexcept {
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    if (kActivity[i] == a) return static_cast<SpectrumClass>(i);
  }
  return SpectrumClass::Idle;  // unreachable: the table covers all 8 patterns
}

std::size_t active_users(SpectrumClass c) noexcept {
  const auto a = activity(c);
  return static_cast<std::size_t>(a[0]) + a[1] + a[2];
}

std::size_t class_index(SpectrumClass c) noexcept { return static_cast<std::size_t>(c); }

SpectrumClass class_from_index(std::size_t i) {
  if (i >= kNumClasses) throw DomainError("class index out of range");
  return static_cast<SpectrumClass>(i);
}

std::string_view class_name(SpectrumClass c) noexcept { return kNames[class_index(c)]; }

SpectrumClass parse_class(std::string_view name) {
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    if (kNames[i] == name) return static_cast<SpectrumClass>(i);
  }
  throw DomainError("unknown spectrum class '" + std::string(name) + "'");
}

std::vector<double> rrc_taps(std::size_t sps, double beta, std::size_t span) {
  if (sps == 0 || span == 0) throw DomainError("rrc_taps: sps and span must be positive");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("rrc_taps: rolloff must lie in (0, 1]");
  const std::size_t n_taps = span * sps + 1;
  const double mid = static_cast<double>(n_taps - 1) / 2.0;
  std::vector<double> h(n_taps);
  double energy = 0.0;
  for (std::size_t i = 0; i < n_taps; ++i) {
    const double t = (static_cast<double>(i) - mid) / static_cast<double>(sps);
    double v;
    if (std::abs(t) < 1e-12) {
      v = 1.0 - beta + 4.0 * beta / kPi;
    } else if (std::abs(std::abs(t) - 1.0 / (4.0 * beta)) < 1e-12) {
      v = beta / std::numbers::sqrt2 *
          ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * beta)) +
           (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * beta)));
    } else {
      v = (std::sin(kPi * t * (1.0 - beta)) + 4.0 * beta * t * std::cos(kPi * t * (1.0 + beta))) /
          (kPi * t * (1.0 - (4.0 * beta * t) * (4.0 * beta * t)));
    }
    h[i] = v;
    energy += v * v;
  }
  const double scale = std::sqrt(static_cast<double>(sps) / energy);
  for (auto& v : h) v *= scale;
  return h;
}

ComplexSignal user_waveform(std::size_t user, double power_w, std::size_t n_samples,
                            const SynthParams& params, StreamKey key) {
  if (user >= kNumUsers) throw DomainError("user index out of range");
  if (!(power_w > 0.0)) throw DomainError("per-user power must be positive");
  if (n_samples == 0) throw DomainError("n_samples must be positive");
  auto eng = key.engine();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double level_db = params.power_spread_db * (2.0 * unit(eng) - 1.0);
  const double phase0 = 2.0 * kPi * unit(eng);
  const double amplitude = std::sqrt(power_w * db_to_linear(level_db));

  const std::size_t sps = params.samples_per_symbol;
  const auto taps = rrc_taps(sps, params.rolloff, params.filter_span_symbols);
  const std::size_t n_sym = (n_samples + taps.size() - 1 + sps - 1) / sps + 1;
  std::vector<cplx> symbols(n_sym);
  const double a = 1.0 / std::numbers::sqrt2;
  for (auto& s : symbols) {
    const auto bits = eng();
    s = {(bits & 1U) != 0U ? a : -a, (bits & 2U) != 0U ? a : -a};
  }

  // Steady-state part of the shaped stream: output i is full-convolution
  // index i + taps - 1, so every tap sees a symbol.
  std::vector<cplx> out(n_samples);
  const double w = 2.0 * kPi * params.subband_offsets_hz[user] / params.sample_rate_hz;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::size_t full = i + taps.size() - 1;
    cplx acc{0.0, 0.0};
    for (std::size_t k = full % sps; k < taps.size(); k += sps) {
      acc += taps[k] * symbols[(full - k) / sps];
    }
    const double phase = std::fmod(w * static_cast<double>(i), 2.0 * kPi) + phase0;
    out[i] = amplitude * acc * std::polar(1.0, phase);
  }
  return ComplexSignal(std::move(out), params.sample_rate_hz);
}

ComplexSignal noise_waveform(std::size_t n_samples, const SynthParams& params, StreamKey key) {
  if (n_samples == 0) throw DomainError("n_samples must be positive");
  auto eng = key.engine();
  std::vector<cplx> out(n_samples);
  for (auto& s : out) s = complex_gaussian(eng, params.noise_power_w);
  return ComplexSignal(std::move(out), params.sample_rate_hz);
}

LabeledSignal gen_class_signal(SpectrumClass c, double per_user_power_w, std::size_t n_samples,
                               const SynthParams& params, StreamKey key) {
  if (n_samples < 256) throw DomainError("gen_class_signal: need at least 256 samples");
  if (!(per_user_power_w > 0.0)) throw DomainError("per-user power must be positive");
  const auto noise = noise_waveform(n_samples, params, key.derive(kNumUsers));
  std::vector<cplx> acc(noise.samples().begin(), noise.samples().end());
  const auto act = activity(c);
  for (std::size_t u = 0; u < kNumUsers; ++u) {
    if (!act[u]) continue;
    const auto w = user_waveform(u, per_user_power_w, n_samples, params, key.derive(u));
    for (std::size_t i = 0; i < n_samples; ++i) acc[i] += w.samples()[i];
  }
  return {ComplexSignal(std::move(acc), params.sample_rate_hz), c};
}

ComplexSignal capture_iq(const ComplexSignal& sig, const RicsProfile& profile,
                         const Scenario& scenario, StreamKey key) {
  const std::size_t m = static_cast<std::size_t>(profile.sensing_combining_gain());
  const double amp = std::sqrt(scenario.surface_hop_gain(scenario.users[0], scenario.rics));
  const double noise = scenario.noise_power_w();
  const auto in = sig.samples();
  std::vector<cplx> out(in.size(), cplx{0.0, 0.0});
  for (std::size_t e = 0; e < m; ++e) {
    auto eng = key.derive(e).engine();
    for (std::size_t i = 0; i < in.size(); ++i) out[i] += amp * in[i] + complex_gaussian(eng, noise);
  }
  // Phase-aligned combining, normalized so the noise power stays at the
  // per-element floor and the SNR grows by m.
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (auto& s : out) s *= norm;
  return sig.with_samples(std::move(out));
}

SpectrumImage visualize(const ComplexSignal& iq) {
  constexpr std::size_t side = SpectrumImage::kSide;
  if (iq.size() < side * side) throw DomainError("visualize: need at least 256 samples");
  const std::size_t seg = iq.size() / side;
  std::vector<double> window(seg);
  for (std::size_t i = 0; i < seg; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(seg));
  }

  SpectrumImage img;
  std::vector<cplx> buf(seg);
  for (std::size_t row = 0; row < side; ++row) {
    for (std::size_t i = 0; i < seg; ++i) buf[i] = iq.samples()[row * seg + i] * window[i];
    fft::forward(buf);
    for (std::size_t k = 0; k < seg; ++k) {
      const std::size_t shifted = (k + seg / 2) % seg;  // column 0 is -fs/2
      const std::size_t col = shifted * side / seg;
      img.pixels[row * side + col] += std::norm(buf[k]);
    }
  }
  double peak = 0.0;
  for (double v : img.pixels) peak = std::max(peak, v);
  if (peak > 0.0) {
    for (auto& v : img.pixels) v /= peak;
  }
  return img;
}

SpectrumClass dataset_class(std::size_t index) noexcept {
  return static_cast<SpectrumClass>(index % kNumClasses);
}

LabeledSignal make_capture(std::size_t index, const RicsProfile& profile, const Scenario& scenario,
                           const DatasetParams& params, StreamKey key) {
  const StreamKey k = key.derive(index);
  auto gen = gen_class_signal(dataset_class(index), params.per_user_power_w, params.n_samples,
                              params.synth, k.derive(0));
  return {capture_iq(gen.signal, profile, scenario, k.derive(1)), gen.label};
}

Dataset make_dataset(std::size_t n_per_class, const RicsProfile& profile, const Scenario& scenario,
                     const DatasetParams& params, StreamKey key, unsigned workers) {
  if (n_per_class == 0) throw DomainError("make_dataset: n_per_class must be positive");
  const std::size_t n = n_per_class * kNumClasses;
  Dataset out(n);
  parallel_for(n, workers, [&](std::size_t i) {
    auto cap = make_capture(i, profile, scenario, params, key);
    out[i] = Example{visualize(cap.signal), cap.label};
  });
  return out;
}

void write_dataset(const std::filesystem::path& dir, std::size_t n_per_class,
                   const RicsProfile& profile, const Scenario& scenario,
                   const DatasetParams& params, StreamKey key, unsigned workers) {
  if (n_per_class == 0) throw DomainError("write_dataset: n_per_class must be positive");
  std::filesystem::create_directories(dir);
  const std::size_t n = n_per_class * kNumClasses;
  std::vector<SpectrumImage> images(n);
  parallel_for(n, workers, [&](std::size_t i) {
    auto cap = make_capture(i, profile, scenario, params, key);
    std::ostringstream name;
    name << "signal_" << std::setw(5) << std::setfill('0') << i << ".bin";
    write_signal(dir / name.str(), cap.signal);
    images[i] = visualize(cap.signal);
  });

  std::ofstream manifest(dir / "manifest.csv");
  std::ofstream img(dir / "images.bin", std::ios::binary);
  if (!manifest || !img) throw IoError("cannot write dataset files in " + dir.string());
  for (std::size_t i = 0; i < n; ++i) {
    manifest << i << ',' << class_name(dataset_class(i)) << '\n';
    for (double v : images[i].pixels) io::write_f64(img, v);
  }
}

Dataset read_dataset(const std::filesystem::path& dir) {
  std::ifstream manifest(dir / "manifest.csv");
  std::ifstream img(dir / "images.bin", std::ios::binary);
  if (!manifest || !img) throw IoError("dataset directory " + dir.string() + " is incomplete");
  Dataset out;
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("malformed manifest line: " + line);
    Example ex{SpectrumImage{}, parse_class(line.substr(comma + 1))};
    for (auto& v : ex.image.pixels) v = io::read_f64(img);
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace rics
