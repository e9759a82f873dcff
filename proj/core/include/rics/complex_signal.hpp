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

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace rics {

using cplx = std::complex<double>;

/// Uniformly sampled complex-baseband sequence. Non-empty, finite, with a
/// positive sample rate; enforced at construction.
class ComplexSignal {
 public:
  ComplexSignal(std::vector<cplx> samples, double sample_rate_hz, double center_freq_hz = 0.0);

  [[nodiscard]] std::span<const cplx> samples() const noexcept { return samples_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] double sample_rate() const noexcept { return sample_rate_; }
  [[nodiscard]] double center_freq() const noexcept { return center_freq_; }
  [[nodiscard]] double mean_power() const noexcept;

  /// Same metadata, new samples (validated).
  [[nodiscard]] ComplexSignal with_samples(std::vector<cplx> samples) const;

 private:
  std::vector<cplx> samples_;
  double sample_rate_;
  double center_freq_;
};

// Binary interchange: little-endian u64 sample count, f64 sample rate,
// f64 center frequency, then interleaved f64 (re, im) pairs.
void write_signal(std::ostream& os, const ComplexSignal& sig);
[[nodiscard]] ComplexSignal read_signal(std::istream& is);
void write_signal(const std::filesystem::path& path, const ComplexSignal& sig);
[[nodiscard]] ComplexSignal read_signal(const std::filesystem::path& path);

namespace io {
// Little-endian scalar helpers shared by the binary formats.
void write_u64(std::ostream& os, std::uint64_t v);
void write_f64(std::ostream& os, double v);
[[nodiscard]] std::uint64_t read_u64(std::istream& is);
[[nodiscard]] double read_f64(std::istream& is);
}  // namespace io

}  // namespace rics
