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

#include "rics/design_a_throughput.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "rics/errors.hpp"
#include "rics/parallel.hpp"

namespace rics::design_a {
namespace {

SlotAllocation split_equally(const Activity& active, std::size_t frame_slots) {
  SlotAllocation alloc{};
  const std::size_t k = static_cast<std::size_t>(active[0]) + active[1] + active[2];
  if (k == 0) return alloc;
  std::size_t remainder = frame_slots % k;
  for (std::size_t u = 0; u < kNumUsers; ++u) {
    if (!active[u]) continue;
    alloc[u] = frame_slots / k;
    if (remainder > 0) {
      ++alloc[u];
      --remainder;
    }
  }
  return alloc;
}

// Per-frame draws shared by all schemes and all N.
struct FrameDraw {
  SpectrumClass truth = SpectrumClass::Idle;
  std::array<SpectrumClass, kSchemes.size()> inferred{};
};

FrameDraw draw_frame(const ThroughputConfig& cfg, const RicsProfile& sensing, StreamKey key) {
  FrameDraw d;
  {
    auto eng = key.derive(0).engine();
    std::uniform_int_distribution<std::size_t> cls(0, kNumClasses - 1);
    d.truth = class_from_index(cls(eng));
  }
  d.inferred[static_cast<std::size_t>(Scheme::RisStatic)] = d.truth;  // unused: static is blind
  d.inferred[static_cast<std::size_t>(Scheme::RicsPerfect)] = d.truth;

  const auto& src = cfg.inference;
  if (src.emulate) {
    // One uniform for both models: they disagree only where their confusion
    // rows differ.
    auto eng = key.derive(1).engine();
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(eng);
    for (std::size_t j = 0; j < 2; ++j) {
      d.inferred[1 + j] = sample_inference(src.confusion[j], d.truth, u);
    }
  } else {
    const auto gen = gen_class_signal(d.truth, src.capture.per_user_power_w, src.capture.n_samples,
                                      src.capture.synth, key.derive(5));
    const auto image = visualize(capture_iq(gen.signal, sensing, cfg.scenario, key.derive(6)));
    for (std::size_t j = 0; j < 2; ++j) d.inferred[1 + j] = onn::infer(*src.models[j], image);
  }
  return d;
}

}  // namespace

SlotAllocation allocate_slots(SpectrumClass inferred, std::size_t frame_slots) {
  if (frame_slots == 0) throw DomainError("frame needs at least one slot");
  return split_equally(activity(inferred), frame_slots);
}

SlotAllocation allocate_static(std::size_t frame_slots) {
  if (frame_slots == 0) throw DomainError("frame needs at least one slot");
  return split_equally({true, true, true}, frame_slots);
}

double user_snr(const Scenario& s, const RicsProfile& profile, std::size_t user,
                const FrameParams& frame) {
  if (user >= kNumUsers) throw DomainError("user index out of range");
  const Point2 u = s.users[user];
  const double cascade = coherent_array_gain(profile, Side::Reflect, s.surface_hop_gain(u, s.rics),
                                             s.surface_hop_gain(s.rics, s.bs));
  const double direct = frame.direct_path ? s.direct_gain(u, s.bs) : 0.0;
  return s.rf.tx_power_w * (cascade + direct) / s.noise_power_w();
}

std::array<double, kNumUsers> frame_bits(SpectrumClass true_class, const SlotAllocation& allocation,
                                         const Scenario& scenario, const RicsProfile& profile,
                                         const FrameParams& frame) {
  std::size_t used = 0;
  for (auto s : allocation) used += s;
  if (used > frame.frame_slots) throw DomainError("allocation exceeds the frame");
  std::array<double, kNumUsers> bits{};
  const auto active = activity(true_class);
  for (std::size_t u = 0; u < kNumUsers; ++u) {
    if (!active[u] || allocation[u] == 0) continue;
    const double capacity = static_cast<double>(allocation[u]) * frame.slot_duration_s *
                            scenario.rf.bandwidth_hz *
                            std::log2(1.0 + user_snr(scenario, profile, u, frame));
    bits[u] = std::min(frame.payload_bits, capacity);
  }
  return bits;
}

double frame_throughput(SpectrumClass true_class, const SlotAllocation& allocation,
                        const Scenario& scenario, const RicsProfile& profile,
                        const FrameParams& frame) {
  const auto b = frame_bits(true_class, allocation, scenario, profile, frame);
  return b[0] + b[1] + b[2];
}

std::string_view scheme_name(Scheme s) noexcept {
  switch (s) {
    case Scheme::RisStatic:
      return "RIS-static";
    case Scheme::Rics2Layer:
      return "RICS-2layer";
    case Scheme::Rics4Layer:
      return "RICS-4layer";
    case Scheme::RicsPerfect:
      return "RICS-perfect";
  }
  return "unknown";
}

SpectrumClass sample_inference(const onn::ConfusionMatrix& confusion, SpectrumClass truth,
                               double u01) {
  const std::size_t t = class_index(truth);
  const auto& row = confusion[t];
  double cumulative = row[t];
  if (u01 < cumulative) return truth;
  std::size_t last_nonzero = t;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (c == t || row[c] <= 0.0) continue;
    last_nonzero = c;
    cumulative += row[c];
    if (u01 < cumulative) return class_from_index(c);
  }
  return class_from_index(last_nonzero);  // row summed slightly below 1
}

ThroughputResult run_throughput_experiment(const ThroughputConfig& cfg) {
  if (cfg.n_grid.empty()) {
    throw ConfigError(ConfigError::Kind::Missing, "elements", 0, "element grid is empty");
  }
  if (cfg.frames == 0) throw ConfigError(ConfigError::Kind::OutOfRange, "frames", 0, "need frames > 0");
  if (!cfg.inference.emulate) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (!cfg.inference.models[j]) {
        throw ConfigError(ConfigError::Kind::Missing, j == 0 ? "model_2layer" : "model_4layer", 0,
                          "model mode needs both trained checkpoints");
      }
    }
  }

  std::vector<std::size_t> n_grid = cfg.n_grid;
  std::sort(n_grid.begin(), n_grid.end());
  std::vector<RicsProfile> static_profiles;
  std::vector<RicsProfile> rics_profiles;
  for (std::size_t n : n_grid) {
    static_profiles.push_back(configure_rr(n, 1.0, {}, {}, cfg.efficiency));
    rics_profiles.push_back(configure_ra(n, cfg.n_absorb, {}, cfg.efficiency));
  }
  const RicsProfile sensing = configure_ra(cfg.n_absorb + 1, cfg.n_absorb);
  const double frame_s = cfg.frame.frame_duration_s();
  const StreamKey root(cfg.seed);

  ThroughputResult result;
  for (auto& per_scheme : result.samples) {
    per_scheme.assign(n_grid.size(), std::vector<double>(cfg.frames, 0.0));
  }
  parallel_for(cfg.frames, cfg.workers, [&](std::size_t f) {
    const FrameDraw d = draw_frame(cfg, sensing, root.derive(f));
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
      for (Scheme scheme : kSchemes) {
        const auto si = static_cast<std::size_t>(scheme);
        const bool blind = scheme == Scheme::RisStatic;
        const auto alloc = blind ? allocate_static(cfg.frame.frame_slots)
                                 : allocate_slots(d.inferred[si], cfg.frame.frame_slots);
        const auto& profile = blind ? static_profiles[ni] : rics_profiles[ni];
        result.samples[si][ni][f] =
            frame_throughput(d.truth, alloc, cfg.scenario, profile, cfg.frame) / frame_s;
      }
    }
  });

  for (Scheme scheme : kSchemes) {
    const auto si = static_cast<std::size_t>(scheme);
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
      const auto& xs = result.samples[si][ni];
      CompensatedSum sum;
      for (double x : xs) sum.add(x);
      const double mean = sum.value() / static_cast<double>(xs.size());
      CompensatedSum sq;
      for (double x : xs) sq.add((x - mean) * (x - mean));
      const double var = xs.size() > 1 ? sq.value() / static_cast<double>(xs.size() - 1) : 0.0;
      const double ci = 1.96 * std::sqrt(var / static_cast<double>(xs.size()));
      result.points.push_back({scheme, n_grid[ni], mean, ci});
    }
  }
  return result;
}

void write_throughput_csv(std::ostream& os, const std::vector<CurvePoint>& points) {
  os << "scheme,n_elements,mean_throughput_bps,ci95_bps\n";
  char buf[160];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%.12g,%.12g\n", scheme_name(p.scheme).data(),
                  p.n_elements, p.mean_bps, p.ci95_bps);
    os << buf;
  }
}

}  // namespace rics::design_a
