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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "rics/config.hpp"
#include "rics/diffractive_onn.hpp"
#include "rics/errors.hpp"
#include "rics/fft.hpp"

namespace {

using namespace rics;
using namespace rics::onn;

std::vector<double> random_image(std::size_t pixels, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> img(pixels);
  for (auto& v : img) v = u(eng);
  return img;
}

SpectrumImage as_image(std::vector<double> px) {
  SpectrumImage img;
  img.pixels = std::move(px);
  return img;
}

double total(const Scores& s) { return std::accumulate(s.begin(), s.end(), 0.0); }

Dataset small_dataset(std::size_t per_class, std::uint64_t seed) {
  const Config c;
  auto dp = c.dataset_params();
  dp.n_samples = 1024;
  return make_dataset(per_class, c.sensing_profile(), c.scenario(), dp, StreamKey(seed));
}

TEST(Layout, DisjointRegionsCoverHalfThePlane) {
  for (std::size_t side : {4u, 8u, 16u}) {
    const auto l = detector_layout(side);
    std::set<std::size_t> seen;
    std::size_t count = 0;
    for (const auto& r : l.regions) {
      EXPECT_EQ(r.size(), side * side / 16);
      for (auto p : r) {
        EXPECT_LT(p, side * side);
        seen.insert(p);
        ++count;
      }
    }
    EXPECT_EQ(seen.size(), count);
    EXPECT_GE(2 * count, side * side);
  }
  EXPECT_THROW((void)detector_layout(6), DomainError);
}

TEST(Propagation, NormalizedDftIsUnitary) {
  std::mt19937_64 eng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<cplx> f(256);
  for (auto& x : f) x = {n(eng), n(eng)};
  double before = 0.0;
  for (auto x : f) before += std::norm(x);
  fft::forward_2d(f, 16, 16);
  double after = 0.0;
  for (auto x : f) after += std::norm(x) / 256.0;
  EXPECT_NEAR(after / before, 1.0, 1e-9);
}

TEST(Model, InitIsDeterministicAndShaped) {
  const auto a = init_model(2, StreamKey(7));
  const auto b = init_model(2, StreamKey(7));
  EXPECT_TRUE(a == b);
  const auto c = init_model(4, StreamKey(8));
  ASSERT_EQ(c.n_layers(), 4u);
  for (const auto& m : c.masks()) {
    ASSERT_EQ(m.size(), 256u);
    for (double p : m) {
      EXPECT_GE(p, 0.0);
      EXPECT_LT(p, 2.0 * std::numbers::pi);
    }
  }
  EXPECT_THROW((void)init_model(0, StreamKey(1)), DomainError);
}

TEST(Forward, ConservesEnergy) {
  std::mt19937_64 eng(11);
  const auto m = init_model(4, StreamKey(2));
  for (int t = 0; t < 1000; ++t) {
    const auto img = random_image(256, eng);
    double in = 0.0;
    for (double v : img) in += v * v;
    double out = 0.0;
    for (auto x : output_field(m, img)) out += std::norm(x);
    ASSERT_NEAR(out / in, 1.0, 1e-9);
    EXPECT_LE(total(forward(m, img)), in * (1.0 + 1e-9));
  }
}

TEST(Forward, ZeroAndScaling) {
  std::mt19937_64 eng(12);
  const auto m = init_model(2, StreamKey(3));
  const auto zero = forward(m, std::vector<double>(256, 0.0));
  for (double s : zero) EXPECT_EQ(s, 0.0);
  EXPECT_EQ(infer(m, as_image(std::vector<double>(256, 0.0))), SpectrumClass::Idle);
  const auto img = random_image(256, eng);
  auto scaled = img;
  for (auto& v : scaled) v *= 3.0;
  const auto a = forward(m, img);
  const auto b = forward(m, scaled);
  for (std::size_t k = 0; k < kNumClasses; ++k) EXPECT_NEAR(b[k], 9.0 * a[k], 1e-9 * b[k] + 1e-15);
  EXPECT_THROW((void)forward(m, std::vector<double>(100, 1.0)), DomainError);
}

TEST(Infer, AgreesWithArgmaxOfForward) {
  std::mt19937_64 eng(13);
  const auto m = init_model(2, StreamKey(4));
  for (int t = 0; t < 1000; ++t) {
    const auto img = random_image(256, eng);
    const auto s = forward(m, img);
    const auto k = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
    EXPECT_EQ(infer(m, as_image(img)), class_from_index(k));
  }
}

TEST(Infer, ArgmaxTieBreak) {
  Scores s{};
  s[3] = 2.0;
  EXPECT_EQ(argmax_class(s), SpectrumClass::U3);
  s[5] = 2.0;
  EXPECT_EQ(argmax_class(s), SpectrumClass::U3);
  EXPECT_EQ(argmax_class(Scores{}), SpectrumClass::Idle);
}

TEST(Gradient, MatchesCentralDifferences) {
  std::mt19937_64 eng(21);
  auto model = init_model(2, StreamKey(5), 4);
  std::uniform_int_distribution<std::size_t> layer(0, 1);
  std::uniform_int_distribution<std::size_t> pixel(0, 15);
  std::uniform_int_distribution<std::size_t> cls(0, 7);
  const double h = 1e-5;
  for (int probe = 0; probe < 20; ++probe) {
    const auto img = random_image(16, eng);
    const auto label = class_from_index(cls(eng));
    const double temp = total(forward(model, img)) / kNumClasses;
    const auto grad = loss_gradient(model, img, label, temp);
    const auto l = layer(eng);
    const auto p = pixel(eng);
    auto plus = model;
    auto minus = model;
    plus.masks()[l][p] += h;
    minus.masks()[l][p] -= h;
    const double fd =
        (example_loss(plus, img, label, temp) - example_loss(minus, img, label, temp)) / (2.0 * h);
    const double scale = std::max({std::abs(fd), std::abs(grad[l][p]), 1e-6});
    EXPECT_LE(std::abs(fd - grad[l][p]) / scale, 1e-4) << "probe " << probe;
  }
}

TEST(Train, ZeroLearningRateLeavesModelUnchanged) {
  const auto data = small_dataset(4, 1);
  const auto m = init_model(2, StreamKey(6));
  TrainOptions o;
  o.epochs = 5;
  o.learning_rate = 0.0;
  const auto r = train(m, data, o, StreamKey(1));
  EXPECT_TRUE(r.model == m);
  ASSERT_EQ(r.loss_history.size(), 5u);
  for (double l : r.loss_history) EXPECT_EQ(l, r.loss_history.front());
}

TEST(Train, LossDecreasesAndHistoryHasOneEntryPerEpoch) {
  const auto data = small_dataset(20, 2);
  TrainOptions o;
  o.epochs = 15;
  const auto r = train(init_model(2, StreamKey(7)), data, o, StreamKey(2));
  ASSERT_EQ(r.loss_history.size(), 15u);
  EXPECT_LE(r.loss_history.back(), r.loss_history.front());
  double best = r.loss_history.front();
  for (double l : r.loss_history) {
    EXPECT_TRUE(std::isfinite(l));
    best = std::min(best, l);
  }
  EXPECT_LT(best, r.loss_history.front());
}

TEST(Train, OverfitsSingleExample) {
  const auto data = small_dataset(1, 3);
  const Dataset one{data[5]};
  TrainOptions o;
  o.epochs = 200;
  const auto r = train(init_model(2, StreamKey(8)), one, o, StreamKey(3));
  EXPECT_EQ(infer(r.model, one[0].image), one[0].label);
}

TEST(Train, DeterministicAcrossWorkers) {
  const auto data = small_dataset(6, 4);
  TrainOptions o;
  o.epochs = 3;
  o.workers = 1;
  const auto a = train(init_model(2, StreamKey(9)), data, o, StreamKey(4));
  o.workers = 8;
  const auto b = train(init_model(2, StreamKey(9)), data, o, StreamKey(4));
  EXPECT_TRUE(a.model == b.model);
  EXPECT_EQ(a.loss_history, b.loss_history);
}

TEST(Train, RejectsEmptyDataset) {
  EXPECT_THROW((void)train(init_model(2, StreamKey(1)), Dataset{}, TrainOptions{}, StreamKey(1)),
               DomainError);
  EXPECT_THROW((void)evaluate(init_model(2, StreamKey(1)), Dataset{}), DomainError);
}

TEST(Train, DivergenceCarriesEpoch) {
  const auto data = small_dataset(2, 5);
  TrainOptions o;
  o.epochs = 3;
  o.learning_rate = std::numeric_limits<double>::infinity();
  try {
    (void)train(init_model(2, StreamKey(1)), data, o, StreamKey(1));
    FAIL() << "expected divergence";
  } catch (const TrainingDivergedError& e) {
    EXPECT_EQ(e.epoch(), 0u);
  }
}

TEST(Evaluate, TabulateEdgeCases) {
  std::vector<SpectrumClass> truth;
  for (int r = 0; r < 3; ++r) {
    for (std::size_t k = 0; k < kNumClasses; ++k) truth.push_back(class_from_index(k));
  }
  const auto perfect = tabulate(truth, truth);
  EXPECT_EQ(perfect.accuracy, 1.0);
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    for (std::size_t j = 0; j < kNumClasses; ++j) EXPECT_EQ(perfect.confusion[i][j], i == j ? 1.0 : 0.0);
  }
  const std::vector<SpectrumClass> idle(truth.size(), SpectrumClass::Idle);
  const auto constant = tabulate(truth, idle);
  EXPECT_DOUBLE_EQ(constant.accuracy, 0.125);
  for (const auto& row : constant.confusion) EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-12);
}

TEST(Evaluate, UntrainedModelsSitAtChance) {
  const auto data = small_dataset(25, 6);
  double sum = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) sum += evaluate(init_model(2, StreamKey(1000 + s)), data).accuracy;
  EXPECT_NEAR(sum / 20.0, 0.125, 0.03);
}

TEST(Checkpoint, RoundTripsBitExactly) {
  const auto dir = std::filesystem::temp_directory_path() / "rics_ckpt_test";
  std::filesystem::create_directories(dir);
  const auto m = init_model(4, StreamKey(10));
  save_checkpoint(dir / "m.ckpt", m);
  EXPECT_TRUE(load_checkpoint(dir / "m.ckpt") == m);

  ConfusionMatrix c{};
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    for (std::size_t j = 0; j < kNumClasses; ++j) c[i][j] = (i == j ? 0.9 : 0.1 / 7.0);
  }
  const auto side = confusion_sidecar(dir / "m.ckpt");
  save_confusion(side, c);
  EXPECT_EQ(load_confusion(side), c);
  EXPECT_THROW((void)load_checkpoint(dir / "missing.ckpt"), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
