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

#include <string>
#include <string_view>
#include <vector>

#include "rics/complex_signal.hpp"

// Wave-domain operators of the analog-computing layer. All of them are linear
// signal-to-signal maps evaluated in the discrete Fourier domain, and all
// return a signal of the input length.
namespace rics::analog {

/// Multiplies bin f by j*2*pi*f. Bin k maps to k*fs/n for k < n/2 and to
/// (k-n)*fs/n otherwise (the n/2 bin of an even length is taken as -fs/2).
[[nodiscard]] ComplexSignal differentiate(const ComplexSignal& sig);

/// Divides bin f by j*2*pi*f and zeroes the DC bin, so
/// integrate(differentiate(s)) == s - mean(s).
[[nodiscard]] ComplexSignal integrate(const ComplexSignal& sig);

/// Circular convolution. Kernels longer than the signal wrap modulo its
/// length; pad the signal first when a linear convolution is wanted.
[[nodiscard]] ComplexSignal convolve(const ComplexSignal& sig, std::span<const cplx> kernel);

/// Multiplies sample n by exp(j*2*pi*shift*n/fs). |shift| must stay below fs/2.
[[nodiscard]] ComplexSignal frequency_shift(const ComplexSignal& sig, double shift_hz);

enum class OperatorKind { Differentiate, Integrate, Convolve, FrequencyShift };

struct OperatorSpec {
  OperatorKind kind = OperatorKind::FrequencyShift;
  std::vector<cplx> kernel;  // convolve only
  double shift_hz = 0.0;     // frequency_shift only
};

[[nodiscard]] std::string_view to_string(OperatorKind kind);
/// Throws UnsupportedOperatorError for unknown names.
[[nodiscard]] OperatorKind parse_operator_kind(std::string_view name);

/// Checks operator parameters against a sample rate (kernel non-empty, shift below Nyquist).
void validate(const OperatorSpec& spec, double sample_rate_hz);

[[nodiscard]] ComplexSignal apply_operator(const OperatorSpec& spec, const ComplexSignal& sig);

}  // namespace rics::analog
