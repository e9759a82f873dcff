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

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "rics/complex_signal.hpp"
#include "rics/signal_synth.hpp"

namespace rics::onn {

using Scores = std::array<double, kNumClasses>;
using ConfusionMatrix = std::array<std::array<double, kNumClasses>, kNumClasses>;

/// Eight disjoint detector regions on a side x side output plane: a 2 x 4
/// tiling of (side/4) x (side/4) blocks, vertically centered. Region k reads
/// class k. Covers exactly half of the plane.
struct DetectorLayout {
  std::size_t side = 0;
  std::array<std::vector<std::size_t>, kNumClasses> regions;
};

inline constexpr std::string_view kLayoutId = "2x4-block";

[[nodiscard]] DetectorLayout detector_layout(std::size_t side);

/// Phase-only diffractive stack. Layer l applies the normalized 2-D DFT and
/// then multiplies by exp(j * mask_l); one more DFT carries the field to the
/// detector plane.
class DiffractiveModel {
 public:
  DiffractiveModel(std::size_t side, std::vector<std::vector<double>> masks);

  [[nodiscard]] std::size_t side() const noexcept { return side_; }
  [[nodiscard]] std::size_t n_layers() const noexcept { return masks_.size(); }
  [[nodiscard]] std::size_t pixels() const noexcept { return side_ * side_; }
  [[nodiscard]] const std::vector<std::vector<double>>& masks() const noexcept { return masks_; }
  [[nodiscard]] std::vector<std::vector<double>>& masks() noexcept { return masks_; }
  [[nodiscard]] const DetectorLayout& layout() const noexcept { return layout_; }

  friend bool operator==(const DiffractiveModel& a, const DiffractiveModel& b) {
    return a.side_ == b.side_ && a.masks_ == b.masks_;
  }

 private:
  std::size_t side_;
  std::vector<std::vector<double>> masks_;
  DetectorLayout layout_;
};

/// Phases uniform on [0, 2*pi).
[[nodiscard]] DiffractiveModel init_model(std::size_t n_layers, StreamKey key,
                                          std::size_t side = SpectrumImage::kSide);

/// Complex field on the detector plane for an amplitude image (zero phase).
[[nodiscard]] std::vector<cplx> output_field(const DiffractiveModel& model,
                                             std::span<const double> image);

/// Summed intensity over each detector region.
[[nodiscard]] Scores forward(const DiffractiveModel& model, std::span<const double> image);
[[nodiscard]] Scores forward(const DiffractiveModel& model, const SpectrumImage& image);

/// Argmax of the scores, lowest class index on ties.
[[nodiscard]] SpectrumClass infer(const DiffractiveModel& model, const SpectrumImage& image);
[[nodiscard]] SpectrumClass argmax_class(const Scores& scores) noexcept;

/// Cross-entropy of softmax(scores / temperature) against `label`.
[[nodiscard]] double example_loss(const DiffractiveModel& model, std::span<const double> image,
                                  SpectrumClass label, double temperature);

/// Analytic gradient of example_loss with respect to every mask phase
/// (same shape as model.masks()). The temperature is held fixed.
[[nodiscard]] std::vector<std::vector<double>> loss_gradient(const DiffractiveModel& model,
                                                             std::span<const double> image,
                                                             SpectrumClass label,
                                                             double temperature);

struct TrainOptions {
  std::size_t epochs = 60;
  double learning_rate = 5.0;
  std::size_t batch_size = 32;
  std::size_t lr_decay_every = 20;
  double lr_decay = 0.5;
  unsigned workers = 1;
};

struct TrainResult {
  DiffractiveModel model;
  std::vector<double> loss_history;  // mean example loss per epoch
};

/// Minibatch SGD on the mask phases. Each batch uses the batch-mean detector
/// score as softmax temperature. Throws TrainingDivergedError on a
/// non-finite loss.
[[nodiscard]] TrainResult train(DiffractiveModel model, const Dataset& data,
                                const TrainOptions& options, StreamKey key);

struct Evaluation {
  double accuracy = 0.0;
  ConfusionMatrix confusion{};  // row = true class, normalized per row
};

[[nodiscard]] Evaluation evaluate(const DiffractiveModel& model, const Dataset& data,
                                  unsigned workers = 1);

/// Evaluation from explicit predictions; shared with evaluate().
[[nodiscard]] Evaluation tabulate(std::span<const SpectrumClass> truth,
                                  std::span<const SpectrumClass> predicted);

// Checkpoint: text header (magic, n_layers, grid, region layout id, `data`)
// followed by n_layers * grid^2 little-endian f64 phases.
void save_checkpoint(const std::filesystem::path& path, const DiffractiveModel& model);
[[nodiscard]] DiffractiveModel load_checkpoint(const std::filesystem::path& path);

/// Sidecar next to a checkpoint holding the test-set confusion matrix.
[[nodiscard]] std::filesystem::path confusion_sidecar(const std::filesystem::path& checkpoint);
void save_confusion(const std::filesystem::path& path, const ConfusionMatrix& confusion);
[[nodiscard]] ConfusionMatrix load_confusion(const std::filesystem::path& path);

}  // namespace rics::onn
