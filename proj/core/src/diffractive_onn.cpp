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

#include "rics/diffractive_onn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rics/errors.hpp"
#include "rics/fft.hpp"
#include "rics/parallel.hpp"

namespace rics::onn {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::string_view kMagic = "rics-onn 1";

void propagate(std::vector<cplx>& field, std::size_t side) {
  fft::forward_2d(field, side, side);
  const double scale = 1.0 / static_cast<double>(side);
  for (auto& v : field) v *= scale;
}

void propagate_adjoint(std::vector<cplx>& field, std::size_t side) {
  fft::inverse_2d(field, side, side);
  const double scale = 1.0 / static_cast<double>(side);
  for (auto& v : field) v *= scale;
}

// Fields after each phase mask plus the detector-plane field.
struct Trace {
  std::vector<std::vector<cplx>> masked;
  std::vector<cplx> out;
};

Trace trace_forward(const DiffractiveModel& model, std::span<const double> image) {
  if (image.size() != model.pixels()) {
    throw DomainError("image has " + std::to_string(image.size()) + " pixels, model expects " +
                      std::to_string(model.pixels()));
  }
  Trace t;
  std::vector<cplx> field(image.begin(), image.end());
  for (const auto& mask : model.masks()) {
    propagate(field, model.side());
    for (std::size_t p = 0; p < field.size(); ++p) field[p] *= std::polar(1.0, mask[p]);
    t.masked.push_back(field);
  }
  propagate(field, model.side());
  t.out = std::move(field);
  return t;
}

Scores region_scores(const DetectorLayout& layout, std::span<const cplx> out) {
  Scores s{};
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    for (std::size_t p : layout.regions[k]) s[k] += std::norm(out[p]);
  }
  return s;
}

double score_total(const Scores& s) { return std::accumulate(s.begin(), s.end(), 0.0); }

// Softmax of scores / temperature, computed stably.
Scores softmax(const Scores& s, double temperature) {
  Scores p{};
  const double m = *std::max_element(s.begin(), s.end()) / temperature;
  double z = 0.0;
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    p[k] = std::exp(s[k] / temperature - m);
    z += p[k];
  }
  for (auto& v : p) v /= z;
  return p;
}

double cross_entropy(const Scores& s, SpectrumClass label, double temperature) {
  const double m = *std::max_element(s.begin(), s.end()) / temperature;
  double z = 0.0;
  for (double v : s) z += std::exp(v / temperature - m);
  return -(s[class_index(label)] / temperature - m - std::log(z));
}

std::vector<std::vector<double>> backward(const DiffractiveModel& model, const Trace& t,
                                          SpectrumClass label, double temperature) {
  const std::size_t side = model.side();
  const auto scores = region_scores(model.layout(), t.out);
  const auto prob = softmax(scores, temperature);

  // dL/d(conj out) = dL/dI * out, nonzero only on detector pixels.
  std::vector<cplx> g(t.out.size(), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    const double dscore = (prob[k] - (k == class_index(label) ? 1.0 : 0.0)) / temperature;
    for (std::size_t p : model.layout().regions[k]) g[p] = dscore * t.out[p];
  }

  std::vector<std::vector<double>> grad(model.n_layers(), std::vector<double>(model.pixels()));
  propagate_adjoint(g, side);
  for (std::size_t l = model.n_layers(); l-- > 0;) {
    const auto& v = t.masked[l];
    const auto& mask = model.masks()[l];
    for (std::size_t p = 0; p < g.size(); ++p) {
      grad[l][p] = -2.0 * (std::conj(g[p]) * v[p]).imag();
      g[p] *= std::polar(1.0, -mask[p]);
    }
    if (l > 0) propagate_adjoint(g, side);
  }
  return grad;
}

}  // namespace

DetectorLayout detector_layout(std::size_t side) {
  if (side < 4 || side % 4 != 0) throw DomainError("detector grid side must be a multiple of 4");
  DetectorLayout layout;
  layout.side = side;
  const std::size_t b = side / 4;
  const std::size_t top = side / 2 - b;
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    const std::size_t r0 = top + (k / 4) * b;
    const std::size_t c0 = (k % 4) * b;
    for (std::size_t r = r0; r < r0 + b; ++r) {
      for (std::size_t c = c0; c < c0 + b; ++c) layout.regions[k].push_back(r * side + c);
    }
  }
  return layout;
}

DiffractiveModel::DiffractiveModel(std::size_t side, std::vector<std::vector<double>> masks)
    : side_(side), masks_(std::move(masks)), layout_(detector_layout(side)) {
  if (masks_.empty()) throw DomainError("model needs at least one layer");
  for (const auto& m : masks_) {
    if (m.size() != side_ * side_) throw DomainError("mask size does not match the grid");
  }
}

DiffractiveModel init_model(std::size_t n_layers, StreamKey key, std::size_t side) {
  if (n_layers < 1) throw DomainError("init_model: n_layers must be >= 1");
  auto eng = key.engine();
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::vector<std::vector<double>> masks(n_layers, std::vector<double>(side * side));
  for (auto& m : masks) {
    for (auto& v : m) v = phase(eng);
  }
  return DiffractiveModel(side, std::move(masks));
}

std::vector<cplx> output_field(const DiffractiveModel& model, std::span<const double> image) {
  return trace_forward(model, image).out;
}

Scores forward(const DiffractiveModel& model, std::span<const double> image) {
  return region_scores(model.layout(), trace_forward(model, image).out);
}

Scores forward(const DiffractiveModel& model, const SpectrumImage& image) {
  return forward(model, std::span<const double>(image.pixels));
}

SpectrumClass argmax_class(const Scores& scores) noexcept {
  std::size_t best = 0;
  for (std::size_t k = 1; k < kNumClasses; ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return static_cast<SpectrumClass>(best);
}

SpectrumClass infer(const DiffractiveModel& model, const SpectrumImage& image) {
  return argmax_class(forward(model, image));
}

double example_loss(const DiffractiveModel& model, std::span<const double> image,
                    SpectrumClass label, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  return cross_entropy(forward(model, image), label, temperature);
}

std::vector<std::vector<double>> loss_gradient(const DiffractiveModel& model,
                                               std::span<const double> image, SpectrumClass label,
                                               double temperature) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  return backward(model, trace_forward(model, image), label, temperature);
}

TrainResult train(DiffractiveModel model, const Dataset& data, const TrainOptions& options,
                  StreamKey key) {
  if (data.empty()) throw DomainError("train: dataset is empty");
  if (!(options.learning_rate >= 0.0)) throw DomainError("train: learning rate must be >= 0");
  if (options.batch_size == 0) throw DomainError("train: batch size must be positive");

  const std::size_t n = data.size();
  const std::size_t n_layers = model.n_layers();
  const std::size_t pixels = model.pixels();
  std::vector<std::size_t> order(n);
  std::vector<Trace> traces(n);
  std::vector<Scores> scores(n);
  std::vector<std::vector<std::vector<double>>> grads(n);
  std::vector<double> losses(n);
  TrainResult result{model, {}};

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    double lr = options.learning_rate;
    if (options.lr_decay_every > 0) {
      lr *= std::pow(options.lr_decay, static_cast<double>(epoch / options.lr_decay_every));
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto eng = key.derive(epoch).engine();
    std::shuffle(order.begin(), order.end(), eng);

    for (std::size_t start = 0; start < n; start += options.batch_size) {
      const std::size_t count = std::min(options.batch_size, n - start);
      parallel_for(count, options.workers, [&](std::size_t b) {
        const auto& ex = data[order[start + b]];
        traces[b] = trace_forward(model, ex.image.pixels);
        scores[b] = region_scores(model.layout(), traces[b].out);
      });
      double total = 0.0;
      for (std::size_t b = 0; b < count; ++b) total += score_total(scores[b]);
      const double temperature = total / static_cast<double>(count * kNumClasses);
      if (!(temperature > 0.0) || !std::isfinite(temperature)) continue;  // all-dark batch

      parallel_for(count, options.workers, [&](std::size_t b) {
        grads[b] = backward(model, traces[b], data[order[start + b]].label, temperature);
      });
      const double step = lr / static_cast<double>(count);
      for (std::size_t l = 0; l < n_layers; ++l) {
        auto& mask = model.masks()[l];
        for (std::size_t p = 0; p < pixels; ++p) {
          double g = 0.0;
          for (std::size_t b = 0; b < count; ++b) g += grads[b][l][p];
          mask[p] -= step * g;
          if (!std::isfinite(mask[p])) {
            throw TrainingDivergedError(epoch, "training diverged at epoch " + std::to_string(epoch));
          }
        }
      }
    }

    // Epoch loss: full-data mean with the data-mean detector score as temperature.
    parallel_for(n, options.workers, [&](std::size_t i) {
      scores[i] = forward(model, data[i].image.pixels);
    });
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += score_total(scores[i]);
    const double temperature = total / static_cast<double>(n * kNumClasses);
    CompensatedSum loss_sum;
    for (std::size_t i = 0; i < n; ++i) {
      losses[i] = temperature > 0.0 ? cross_entropy(scores[i], data[i].label, temperature)
                                    : std::log(static_cast<double>(kNumClasses));
      loss_sum.add(losses[i]);
    }
    const double epoch_loss = loss_sum.value() / static_cast<double>(n);
    if (!std::isfinite(epoch_loss)) {
      throw TrainingDivergedError(epoch, "training diverged at epoch " + std::to_string(epoch));
    }
    result.loss_history.push_back(epoch_loss);
  }
  result.model = std::move(model);
  return result;
}

Evaluation tabulate(std::span<const SpectrumClass> truth, std::span<const SpectrumClass> predicted) {
  if (truth.empty()) throw DomainError("evaluate: dataset is empty");
  if (truth.size() != predicted.size()) throw DomainError("evaluate: size mismatch");
  std::array<std::array<std::size_t, kNumClasses>, kNumClasses> counts{};
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++counts[class_index(truth[i])][class_index(predicted[i])];
    if (truth[i] == predicted[i]) ++correct;
  }
  Evaluation ev;
  ev.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  for (std::size_t r = 0; r < kNumClasses; ++r) {
    const auto row_total = std::accumulate(counts[r].begin(), counts[r].end(), std::size_t{0});
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      ev.confusion[r][c] =
          row_total == 0 ? 0.0 : static_cast<double>(counts[r][c]) / static_cast<double>(row_total);
    }
  }
  return ev;
}

Evaluation evaluate(const DiffractiveModel& model, const Dataset& data, unsigned workers) {
  if (data.empty()) throw DomainError("evaluate: dataset is empty");
  std::vector<SpectrumClass> truth(data.size());
  std::vector<SpectrumClass> predicted(data.size());
  parallel_for(data.size(), workers, [&](std::size_t i) {
    truth[i] = data[i].label;
    predicted[i] = infer(model, data[i].image);
  });
  return tabulate(truth, predicted);
}

void save_checkpoint(const std::filesystem::path& path, const DiffractiveModel& model) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << kMagic << '\n'
     << "n_layers " << model.n_layers() << '\n'
     << "grid " << model.side() << '\n'
     << "regions " << kLayoutId << '\n'
     << "data\n";
  for (const auto& mask : model.masks()) {
    for (double v : mask) io::write_f64(os, v);
  }
  if (!os) throw IoError("failed writing checkpoint " + path.string());
}

DiffractiveModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open checkpoint " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw IoError("not a model checkpoint: " + path.string());
  std::size_t n_layers = 0;
  std::size_t grid = 0;
  std::string regions;
  while (std::getline(is, line) && line != "data") {
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "n_layers") {
      fields >> n_layers;
    } else if (key == "grid") {
      fields >> grid;
    } else if (key == "regions") {
      fields >> regions;
    } else {
      throw IoError("unknown checkpoint header field '" + key + "'");
    }
  }
  if (line != "data" || n_layers == 0 || grid == 0) throw IoError("truncated checkpoint header");
  if (regions != kLayoutId) throw IoError("unsupported detector layout '" + regions + "'");
  std::vector<std::vector<double>> masks(n_layers, std::vector<double>(grid * grid));
  for (auto& m : masks) {
    for (auto& v : m) v = io::read_f64(is);
  }
  return DiffractiveModel(grid, std::move(masks));
}

std::filesystem::path confusion_sidecar(const std::filesystem::path& checkpoint) {
  auto p = checkpoint;
  p += ".confusion.csv";
  return p;
}

void save_confusion(const std::filesystem::path& path, const ConfusionMatrix& confusion) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "true_class";
  for (std::size_t c = 0; c < kNumClasses; ++c) os << ',' << class_name(class_from_index(c));
  os << '\n' << std::setprecision(17);
  for (std::size_t r = 0; r < kNumClasses; ++r) {
    os << class_name(class_from_index(r));
    for (double v : confusion[r]) os << ',' << v;
    os << '\n';
  }
}

ConfusionMatrix load_confusion(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open confusion matrix " + path.string());
  std::string line;
  std::getline(is, line);  // header
  ConfusionMatrix m{};
  for (std::size_t r = 0; r < kNumClasses; ++r) {
    if (!std::getline(is, line)) throw IoError("confusion matrix has fewer than 8 rows");
    std::istringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    if (parse_class(cell) != class_from_index(r)) throw IoError("confusion rows out of order");
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      if (!std::getline(fields, cell, ',')) throw IoError("confusion row has fewer than 8 values");
      m[r][c] = std::stod(cell);
    }
  }
  return m;
}

}  // namespace rics::onn
