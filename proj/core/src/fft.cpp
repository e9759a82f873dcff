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

#include "rics/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "rics/errors.hpp"

namespace rics::fft {
namespace {

using PlanKey = std::tuple<std::size_t, std::size_t, int>;  // rows (0 for 1-D), cols, sign

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t rows, std::size_t cols, int sign) {
    std::lock_guard lock(mutex_);
    const PlanKey key{rows, cols, sign};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t n = (rows == 0 ? 1 : rows) * cols;
    std::vector<cplx> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan =
        rows == 0 ? fftw_plan_dft_1d(static_cast<int>(cols), buf, buf, sign, flags)
                  : fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), buf, buf,
                                     sign, flags);
    if (plan == nullptr) throw Error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::span<cplx> data, std::size_t rows, std::size_t cols, int sign) {
  if (data.empty()) return;
  fftw_plan plan = cache().get(rows, cols, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

void check_2d(std::span<cplx> data, std::size_t rows, std::size_t cols) {
  if (rows * cols != data.size()) throw DomainError("fft: buffer size does not match rows*cols");
}

}  // namespace

void forward(std::span<cplx> data) { run(data, 0, data.size(), FFTW_FORWARD); }
void inverse(std::span<cplx> data) { run(data, 0, data.size(), FFTW_BACKWARD); }

void forward_2d(std::span<cplx> data, std::size_t rows, std::size_t cols) {
  check_2d(data, rows, cols);
  run(data, rows, cols, FFTW_FORWARD);
}

void inverse_2d(std::span<cplx> data, std::size_t rows, std::size_t cols) {
  check_2d(data, rows, cols);
  run(data, rows, cols, FFTW_BACKWARD);
}

}  // namespace rics::fft
