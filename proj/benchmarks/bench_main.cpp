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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "rics/analog_compute.hpp"
#include "rics/config.hpp"
#include "rics/design_b_secrecy.hpp"
#include "rics/diffractive_onn.hpp"
#include "rics/signal_synth.hpp"

namespace {

using namespace rics;

std::vector<double> random_image(std::size_t n) {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> img(n);
  for (auto& v : img) v = u(eng);
  return img;
}

void BM_OnnForward(benchmark::State& state) {
  const auto model = onn::init_model(static_cast<std::size_t>(state.range(0)), StreamKey(1));
  const auto img = random_image(model.pixels());
  for (auto _ : state) benchmark::DoNotOptimize(onn::forward(model, img));
}
BENCHMARK(BM_OnnForward)->Arg(2)->Arg(4);

void BM_OnnGradient(benchmark::State& state) {
  const auto model = onn::init_model(static_cast<std::size_t>(state.range(0)), StreamKey(1));
  const auto img = random_image(model.pixels());
  for (auto _ : state) benchmark::DoNotOptimize(onn::loss_gradient(model, img, SpectrumClass::U1U3, 1.0));
}
BENCHMARK(BM_OnnGradient)->Arg(2)->Arg(4);

void BM_Convolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<cplx> x(n, cplx{1.0, 0.5});
  const std::vector<cplx> h(33, cplx{0.1, 0.0});
  const ComplexSignal sig(x, 10e6);
  for (auto _ : state) benchmark::DoNotOptimize(analog::convolve(sig, h));
}
BENCHMARK(BM_Convolve)->Arg(1024)->Arg(4096)->Arg(65536);

void BM_FrequencyShift(benchmark::State& state) {
  const ComplexSignal sig(std::vector<cplx>(4096, cplx{1.0, 0.0}), 10e6);
  for (auto _ : state) benchmark::DoNotOptimize(analog::frequency_shift(sig, 2e6));
}
BENCHMARK(BM_FrequencyShift);

void BM_DatasetExample(benchmark::State& state) {
  const Config c;
  const auto profile = c.sensing_profile();
  const auto scenario = c.scenario();
  const auto params = c.dataset_params();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(visualize(make_capture(i++, profile, scenario, params, StreamKey(3)).signal));
  }
}
BENCHMARK(BM_DatasetExample);

void BM_SecrecySweep(benchmark::State& state) {
  const Config c;
  design_b::SecrecyConfig sc;
  sc.scenario = c.scenario();
  sc.alphas = c.alphas;
  sc.n_grid = c.elements;
  sc.options = c.secrecy_options();
  for (auto _ : state) benchmark::DoNotOptimize(design_b::run_secrecy_experiment(sc));
}
BENCHMARK(BM_SecrecySweep);

}  // namespace

BENCHMARK_MAIN();
