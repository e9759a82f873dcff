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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace rics {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream splitting. Every trial, example or user waveform
/// derives its own key from the master seed by a chain of integer tags, so
/// the random numbers it sees do not depend on evaluation order or on how
/// work is spread over threads.
class StreamKey {
 public:
  constexpr explicit StreamKey(std::uint64_t seed) noexcept : key_(splitmix64(seed)) {}

  [[nodiscard]] constexpr StreamKey derive(std::uint64_t tag) const noexcept {
    StreamKey k(0);
    k.key_ = splitmix64(key_ ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
    return k;
  }

  [[nodiscard]] std::mt19937_64 engine() const { return std::mt19937_64(key_); }
  [[nodiscard]] constexpr std::uint64_t value() const noexcept { return key_; }

  friend constexpr bool operator==(StreamKey, StreamKey) = default;

 private:
  std::uint64_t key_;
};

/// Circularly-symmetric complex Gaussian sample with E|z|^2 = variance.
template <class Engine>
std::complex<double> complex_gaussian(Engine& eng, double variance) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double s = std::sqrt(variance / 2.0);
  const double re = n(eng);
  const double im = n(eng);
  return {s * re, s * im};
}

}  // namespace rics
