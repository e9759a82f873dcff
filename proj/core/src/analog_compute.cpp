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

#include "rics/analog_compute.hpp"

#include <cmath>
#include <numbers>

#include "rics/errors.hpp"
#include "rics/fft.hpp"

namespace rics::analog {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bin_frequency(std::size_t k, std::size_t n, double fs) {
  const auto kk = static_cast<double>(k);
  const auto nn = static_cast<double>(n);
  return (2 * k < n ? kk : kk - nn) * fs / nn;
}

// Applies a per-bin response h(f) in the Fourier domain.
template <class Response>
ComplexSignal spectral_filter(const ComplexSignal& sig, Response&& response) {
  const std::size_t n = sig.size();
  std::vector<cplx> buf(sig.samples().begin(), sig.samples().end());
  fft::forward(buf);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    buf[k] *= response(bin_frequency(k, n, sig.sample_rate())) * inv_n;
  }
  fft::inverse(buf);
  return sig.with_samples(std::move(buf));
}

}  // namespace

ComplexSignal differentiate(const ComplexSignal& sig) {
  return spectral_filter(sig, [](double f) { return cplx{0.0, kTwoPi * f}; });
}

ComplexSignal integrate(const ComplexSignal& sig) {
  return spectral_filter(sig, [](double f) {
    return f == 0.0 ? cplx{0.0, 0.0} : cplx{1.0, 0.0} / cplx{0.0, kTwoPi * f};
  });
}

ComplexSignal convolve(const ComplexSignal& sig, std::span<const cplx> kernel) {
  if (kernel.empty()) throw DomainError("convolve: kernel must not be empty");
  const std::size_t n = sig.size();
  std::vector<cplx> x(sig.samples().begin(), sig.samples().end());
  std::vector<cplx> h(n, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < kernel.size(); ++i) h[i % n] += kernel[i];
  fft::forward(x);
  fft::forward(h);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) x[k] *= h[k] * inv_n;
  fft::inverse(x);
  return sig.with_samples(std::move(x));
}

ComplexSignal frequency_shift(const ComplexSignal& sig, double shift_hz) {
  if (!(std::abs(shift_hz) < sig.sample_rate() / 2.0)) {
    throw DomainError("frequency_shift: shift must stay below the Nyquist frequency");
  }
  const auto in = sig.samples();
  std::vector<cplx> out(in.size());
  const double step = kTwoPi * shift_hz / sig.sample_rate();
  for (std::size_t i = 0; i < in.size(); ++i) {
    // Phase from the sample index directly so that long signals do not
    // accumulate rounding.
    out[i] = in[i] * std::polar(1.0, std::fmod(step * static_cast<double>(i), kTwoPi));
  }
  return sig.with_samples(std::move(out));
}

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Differentiate:
      return "differentiate";
    case OperatorKind::Integrate:
      return "integrate";
    case OperatorKind::Convolve:
      return "convolve";
    case OperatorKind::FrequencyShift:
      return "frequency_shift";
  }
  throw UnsupportedOperatorError("unknown operator kind");
}

OperatorKind parse_operator_kind(std::string_view name) {
  if (name == "differentiate") return OperatorKind::Differentiate;
  if (name == "integrate") return OperatorKind::Integrate;
  if (name == "convolve") return OperatorKind::Convolve;
  if (name == "frequency_shift") return OperatorKind::FrequencyShift;
  throw UnsupportedOperatorError("unsupported operator '" + std::string(name) + "'");
}

void validate(const OperatorSpec& spec, double sample_rate_hz) {
  switch (spec.kind) {
    case OperatorKind::Differentiate:
    case OperatorKind::Integrate:
      return;
    case OperatorKind::Convolve:
      if (spec.kernel.empty()) throw DomainError("convolve: kernel must not be empty");
      return;
    case OperatorKind::FrequencyShift:
      if (!(std::abs(spec.shift_hz) < sample_rate_hz / 2.0)) {
        throw DomainError("frequency_shift: shift must stay below the Nyquist frequency");
      }
      return;
  }
  throw UnsupportedOperatorError("unknown operator kind");
}

ComplexSignal apply_operator(const OperatorSpec& spec, const ComplexSignal& sig) {
  switch (spec.kind) {
    case OperatorKind::Differentiate:
      return differentiate(sig);
    case OperatorKind::Integrate:
      return integrate(sig);
    case OperatorKind::Convolve:
      return convolve(sig, spec.kernel);
    case OperatorKind::FrequencyShift:
      return frequency_shift(sig, spec.shift_hz);
  }
  throw UnsupportedOperatorError("unknown operator kind");
}

}  // namespace rics::analog
