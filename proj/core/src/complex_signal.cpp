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

#include "rics/complex_signal.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "rics/errors.hpp"

namespace rics {

ComplexSignal::ComplexSignal(std::vector<cplx> samples, double sample_rate_hz, double center_freq_hz)
    : samples_(std::move(samples)), sample_rate_(sample_rate_hz), center_freq_(center_freq_hz) {
  if (samples_.empty()) throw DomainError("signal must contain at least one sample");
  if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_)) {
    throw DomainError("sample rate must be positive");
  }
  if (!std::isfinite(center_freq_)) throw DomainError("center frequency must be finite");
  for (const auto& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw DomainError("signal contains non-finite samples");
    }
  }
}

double ComplexSignal::mean_power() const noexcept {
  double acc = 0.0;
  for (const auto& s : samples_) acc += std::norm(s);
  return acc / static_cast<double>(samples_.size());
}

ComplexSignal ComplexSignal::with_samples(std::vector<cplx> samples) const {
  return ComplexSignal(std::move(samples), sample_rate_, center_freq_);
}

namespace io {

void write_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> buf{};
  for (std::size_t i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
  os.write(buf.data(), buf.size());
}

void write_f64(std::ostream& os, double v) { write_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t read_u64(std::istream& is) {
  std::array<unsigned char, 8> buf{};
  is.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (!is) throw IoError("unexpected end of binary stream");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

double read_f64(std::istream& is) { return std::bit_cast<double>(read_u64(is)); }

}  // namespace io

void write_signal(std::ostream& os, const ComplexSignal& sig) {
  io::write_u64(os, sig.size());
  io::write_f64(os, sig.sample_rate());
  io::write_f64(os, sig.center_freq());
  for (const auto& s : sig.samples()) {
    io::write_f64(os, s.real());
    io::write_f64(os, s.imag());
  }
  if (!os) throw IoError("failed writing signal");
}

ComplexSignal read_signal(std::istream& is) {
  const std::uint64_t n = io::read_u64(is);
  const double fs = io::read_f64(is);
  const double fc = io::read_f64(is);
  constexpr std::uint64_t kMaxSamples = std::uint64_t{1} << 32;
  if (n == 0 || n > kMaxSamples) throw IoError("signal header has an invalid sample count");
  std::vector<cplx> samples(n);
  for (auto& s : samples) {
    const double re = io::read_f64(is);
    const double im = io::read_f64(is);
    s = {re, im};
  }
  return ComplexSignal(std::move(samples), fs, fc);
}

void write_signal(const std::filesystem::path& path, const ComplexSignal& sig) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_signal(os, sig);
}

ComplexSignal read_signal(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read_signal(is);
}

}  // namespace rics
