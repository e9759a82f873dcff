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
#include <cstddef>
#include <span>

// Thin in-place wrapper over FFTW. Transforms are unnormalized; plans are
// cached per shape and safe to execute from several threads.
namespace rics::fft {

using cplx = std::complex<double>;

void forward(std::span<cplx> data);
void inverse(std::span<cplx> data);

void forward_2d(std::span<cplx> data, std::size_t rows, std::size_t cols);
void inverse_2d(std::span<cplx> data, std::size_t rows, std::size_t cols);

}  // namespace rics::fft
