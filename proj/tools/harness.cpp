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

#include "harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "rics/analog_compute.hpp"
#include "rics/config.hpp"
#include "rics/design_a_throughput.hpp"
#include "rics/design_b_secrecy.hpp"
#include "rics/diffractive_onn.hpp"
#include "rics/errors.hpp"
#include "rics/signal_synth.hpp"

namespace rics::cli {
namespace {

namespace fs = std::filesystem;

// Substream tags under the master seed.
enum Tag : std::uint64_t {
  kTrainData = 1,
  kTestData = 2,
  kModelInit = 3,
  kTrainShuffle = 4,
  kThroughput = 5,
  kSecrecy = 6,
};

struct Flags {
  std::string config = "default";
  std::string out;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  std::size_t layers = 0;
  std::string alpha;
  std::string elements;
  std::size_t trials = 0;
  unsigned workers = 0;
  std::string model;
  std::vector<std::string> emulate_accuracy;  // empty entry when given bare
  std::string in;
  std::string op;
  double shift_hz = 0.0;
  std::string kernel;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* layers_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
  CLI::Option* emulate_opt = nullptr;
  CLI::Option* shift_opt = nullptr;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "config file, or 'default' for built-in defaults");
  f.seed_opt = sub->add_option("--seed", f.seed, "master 64-bit seed");
  sub->add_option("--out", f.out, "output path");
  f.workers_opt = sub->add_option("--workers", f.workers, "worker threads")->check(CLI::Range(1, 1024));
  sub->add_option("--set", f.sets, "override a config key, section.key=value");
}

std::vector<Override> collect_overrides(const Flags& f) {
  std::vector<Override> o;
  for (const auto& s : f.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(ConfigError::Kind::Syntax, s, 0, "--set expects key=value, got '" + s + "'");
    }
    o.push_back({s.substr(0, eq), s.substr(eq + 1), 0});
  }
  if (f.seed_opt != nullptr && f.seed_opt->count() > 0) o.push_back({"general.seed", std::to_string(f.seed), 0});
  if (f.workers_opt != nullptr && f.workers_opt->count() > 0) {
    o.push_back({"general.workers", std::to_string(f.workers), 0});
  }
  if (f.layers_opt != nullptr && f.layers_opt->count() > 0) {
    o.push_back({"onn.layers", std::to_string(f.layers), 0});
  }
  if (!f.alpha.empty()) o.push_back({"surface.alpha", f.alpha, 0});
  if (!f.elements.empty()) o.push_back({"surface.elements", f.elements, 0});
  if (f.trials_opt != nullptr && f.trials_opt->count() > 0) {
    o.push_back({"throughput.frames", std::to_string(f.trials), 0});
    o.push_back({"scenario.fading_trials", std::to_string(f.trials), 0});
  }
  if (!f.op.empty()) o.push_back({"secrecy.operator", f.op, 0});
  if (f.shift_opt != nullptr && f.shift_opt->count() > 0) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", f.shift_hz);
    o.push_back({"secrecy.shift_hz", buf, 0});
  }
  if (!f.kernel.empty()) o.push_back({"secrecy.kernel", f.kernel, 0});
  return o;
}

fs::path under_output(const Config& c, const fs::path& p) {
  return p.is_absolute() ? p : fs::path(c.output) / p;
}

fs::path artifact_path(const Flags& f, const Config& c, const fs::path& fallback) {
  return f.out.empty() ? under_output(c, fallback) : fs::path(f.out);
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

std::ofstream open_out(const fs::path& p) {
  ensure_parent(p);
  std::ofstream os(p, std::ios::binary);
  if (!os) throw IoError("cannot write " + p.string());
  return os;
}

fs::path default_checkpoint(std::size_t layers) {
  return "onn_" + std::to_string(layers) + "layer.ckpt";
}

Dataset dataset_for(const Config& c, Tag tag) {
  const std::size_t per_class = tag == kTrainData ? c.train_per_class : c.test_per_class;
  return make_dataset(per_class, c.sensing_profile(), c.scenario(), c.dataset_params(),
                      StreamKey(c.seed).derive(tag), c.workers);
}

void print_confusion(std::ostream& out, const onn::ConfusionMatrix& m) {
  out << "true_class";
  for (std::size_t j = 0; j < kNumClasses; ++j) out << ',' << class_name(class_from_index(j));
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    out << class_name(class_from_index(i));
    for (double v : m[i]) {
      std::snprintf(buf, sizeof buf, ",%.4f", v);
      out << buf;
    }
    out << '\n';
  }
}

int cmd_synth(const Flags& f, std::ostream& out) {
  const Config c = parse_config(f.config, collect_overrides(f));
  const fs::path dir = artifact_path(f, c, "dataset");
  const StreamKey root(c.seed);
  const auto sc = c.scenario();
  const auto profile = c.sensing_profile();
  write_dataset(dir / "train", c.train_per_class, profile, sc, c.dataset_params(),
                root.derive(kTrainData), c.workers);
  write_dataset(dir / "test", c.test_per_class, profile, sc, c.dataset_params(),
                root.derive(kTestData), c.workers);
  out << "wrote " << kNumClasses * c.train_per_class << " training and "
      << kNumClasses * c.test_per_class << " test captures to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_train(const Flags& f, std::ostream& out) {
  const Config c = parse_config(f.config, collect_overrides(f));
  const StreamKey root(c.seed);
  const Dataset train_set = dataset_for(c, kTrainData);
  const Dataset test_set = dataset_for(c, kTestData);
  const auto model = onn::init_model(c.layers, root.derive(kModelInit).derive(c.layers));
  const auto result =
      onn::train(model, train_set, c.train_options(), root.derive(kTrainShuffle).derive(c.layers));
  const auto eval = onn::evaluate(result.model, test_set, c.workers);

  const fs::path ckpt = artifact_path(f, c, default_checkpoint(c.layers));
  ensure_parent(ckpt);
  onn::save_checkpoint(ckpt, result.model);
  onn::save_confusion(onn::confusion_sidecar(ckpt), eval.confusion);
  {
    auto os = open_out(fs::path(ckpt.string() + ".loss.csv"));
    os << "epoch,loss\n";
    char buf[64];
    for (std::size_t e = 0; e < result.loss_history.size(); ++e) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", e + 1, result.loss_history[e]);
      os << buf;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "layers %zu test_accuracy %.17g\n", c.layers, eval.accuracy);
  out << buf << "checkpoint " << ckpt.string() << '\n';
  return kExitOk;
}

int cmd_eval(const Flags& f, std::ostream& out) {
  const Config c = parse_config(f.config, collect_overrides(f));
  const fs::path ckpt =
      f.model.empty() ? under_output(c, default_checkpoint(c.layers)) : fs::path(f.model);
  const auto model = onn::load_checkpoint(ckpt);
  const auto eval = onn::evaluate(model, dataset_for(c, kTestData), c.workers);
  char buf[96];
  std::snprintf(buf, sizeof buf, "layers %zu accuracy %.17g\n", model.n_layers(), eval.accuracy);
  out << buf;
  if (f.out.empty()) {
    print_confusion(out, eval.confusion);
  } else {
    ensure_parent(f.out);
    onn::save_confusion(f.out, eval.confusion);
  }
  return kExitOk;
}

onn::ConfusionMatrix uniform_confusion(double accuracy) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw ConfigError(ConfigError::Kind::OutOfRange, "emulate-accuracy", 0,
                      "emulated accuracy must lie in [0, 1]");
  }
  onn::ConfusionMatrix m{};
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    for (std::size_t j = 0; j < kNumClasses; ++j) {
      m[i][j] = i == j ? accuracy : (1.0 - accuracy) / static_cast<double>(kNumClasses - 1);
    }
  }
  return m;
}

int cmd_throughput(const Flags& f, std::ostream& out) {
  const Config c = parse_config(f.config, collect_overrides(f));
  design_a::ThroughputConfig tc;
  tc.scenario = c.scenario();
  tc.n_grid = c.elements;
  tc.n_absorb = c.n_absorb;
  tc.efficiency = c.efficiency;
  tc.frames = c.frames;
  tc.frame = c.frame_params();
  tc.seed = StreamKey(c.seed).derive(kThroughput).value();
  tc.workers = c.workers;

  const std::array<fs::path, 2> models{under_output(c, c.model_2layer),
                                       under_output(c, c.model_4layer)};
  const bool flag = f.emulate_opt != nullptr && f.emulate_opt->count() > 0;
  tc.inference.emulate = c.emulate || flag;
  std::vector<double> acc;
  for (const auto& v : f.emulate_accuracy) {
    if (v.empty()) continue;
    try {
      acc.push_back(std::stod(v));
    } catch (const std::exception&) {
      throw ConfigError(ConfigError::Kind::OutOfRange, "emulate-accuracy", 0, "not a number: '" + v + "'");
    }
  }
  if (flag && !acc.empty()) {
    if (acc.size() != 2) {
      throw ConfigError(ConfigError::Kind::OutOfRange, "emulate-accuracy", 0,
                        "--emulate-accuracy takes two values: 2-layer,4-layer");
    }
    for (std::size_t j = 0; j < 2; ++j) tc.inference.confusion[j] = uniform_confusion(acc[j]);
  } else {
    for (std::size_t j = 0; j < 2; ++j) {
      if (tc.inference.emulate) {
        const auto side = onn::confusion_sidecar(models[j]);
        if (!fs::exists(side)) {
          throw ConfigError(ConfigError::Kind::Missing, j == 0 ? "model_2layer" : "model_4layer", 0,
                            "confusion matrix " + side.string() + " not found; run train first");
        }
        tc.inference.confusion[j] = onn::load_confusion(side);
      } else {
        if (!fs::exists(models[j])) {
          throw ConfigError(ConfigError::Kind::Missing, j == 0 ? "model_2layer" : "model_4layer", 0,
                            "checkpoint " + models[j].string() + " not found; run train first");
        }
        tc.inference.models[j] = onn::load_checkpoint(models[j]);
      }
    }
    tc.inference.capture = c.dataset_params();
  }

  const auto result = design_a::run_throughput_experiment(tc);
  const fs::path csv = artifact_path(f, c, "throughput.csv");
  auto os = open_out(csv);
  design_a::write_throughput_csv(os, result.points);
  out << "wrote " << result.points.size() << " rows to " << csv.string() << '\n';
  return kExitOk;
}

int cmd_secrecy(const Flags& f, std::ostream& out) {
  const Config c = parse_config(f.config, collect_overrides(f));
  design_b::SecrecyConfig sc;
  sc.scenario = c.scenario();
  sc.alphas = c.alphas;
  sc.n_grid = c.elements;
  sc.efficiency = c.efficiency;
  sc.options = c.secrecy_options();
  sc.seed = StreamKey(c.seed).derive(kSecrecy).value();
  sc.workers = c.workers;
  const auto points = design_b::run_secrecy_experiment(sc);
  const fs::path csv = artifact_path(f, c, "secrecy.csv");
  auto os = open_out(csv);
  design_b::write_secrecy_csv(os, points);
  out << "wrote " << points.size() << " rows to " << csv.string() << '\n';
  return kExitOk;
}

int cmd_optimize_alpha(const Flags& f, std::ostream& out) {
  const Config c = parse_config(f.config, collect_overrides(f));
  const auto scenario = c.scenario();
  const auto options = c.secrecy_options();
  const StreamKey key = StreamKey(c.seed).derive(kSecrecy);
  std::vector<std::size_t> n_grid = c.elements;
  std::sort(n_grid.begin(), n_grid.end());
  const fs::path csv = artifact_path(f, c, "optimize_alpha.csv");
  auto os = open_out(csv);
  os << "n_elements,alpha_star,secrecy_star\n";
  char buf[96];
  for (std::size_t n : n_grid) {
    const auto best = design_b::optimize_alpha(scenario, n, c.alpha_step, options, c.efficiency, key);
    std::snprintf(buf, sizeof buf, "%zu,%.6g,%.12g\n", n, best.alpha, best.secrecy);
    os << buf;
    out << buf;
  }
  return kExitOk;
}

int cmd_operators(const Flags& f, std::ostream& out) {
  const Config c = parse_config(f.config, collect_overrides(f));
  const auto input = read_signal(fs::path(f.in));
  const auto spec = c.operator_spec();
  analog::validate(spec, input.sample_rate());
  const auto result = analog::apply_operator(spec, input);
  const fs::path dst = artifact_path(f, c, "operator_out.bin");
  ensure_parent(dst);
  write_signal(dst, result);
  out << analog::to_string(spec.kind) << ": " << result.size() << " samples to " << dst.string()
      << '\n';
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"RICS experiment harness", "rics"};
  app.require_subcommand(1);
  Flags f;

  auto* synth = app.add_subcommand("synth", "generate the spectrum-sensing dataset");
  add_common(synth, f);

  auto* train = app.add_subcommand("train", "train a diffractive classifier");
  add_common(train, f);
  f.layers_opt = train->add_option("--layers", f.layers, "number of phase masks");

  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint on the test set");
  add_common(eval, f);
  auto* eval_layers = eval->add_option("--layers", f.layers, "selects the default checkpoint");
  eval->add_option("--model", f.model, "checkpoint path");

  auto* thr = app.add_subcommand("throughput", "inference-driven TDMA sweep");
  add_common(thr, f);
  thr->add_option("--elements", f.elements, "N grid, comma separated");
  f.trials_opt = thr->add_option("--trials", f.trials, "frames per point");
  f.emulate_opt = thr->add_option("--emulate-accuracy", f.emulate_accuracy,
                                  "sample inferences from confusion matrices; optional "
                                  "2-layer,4-layer accuracies replace the trained ones")
                      ->expected(0, 2)
                      ->delimiter(',');

  auto* sec = app.add_subcommand("secrecy", "reflect/refract secrecy sweep");
  add_common(sec, f);
  sec->add_option("--alpha", f.alpha, "alpha grid, comma separated");
  sec->add_option("--elements", f.elements, "N grid, comma separated");
  auto* sec_trials = sec->add_option("--trials", f.trials, "fading trials per point");

  auto* opt = app.add_subcommand("optimize-alpha", "grid search for the best power split");
  add_common(opt, f);
  opt->add_option("--elements", f.elements, "N grid, comma separated");
  auto* opt_trials = opt->add_option("--trials", f.trials, "fading trials per point");

  auto* ops = app.add_subcommand("operators", "apply an analog operator to a signal file");
  add_common(ops, f);
  ops->add_option("--in", f.in, "input signal file")->required();
  ops->add_option("--op", f.op, "differentiate, integrate, convolve or frequency_shift");
  f.shift_opt = ops->add_option("--shift", f.shift_hz, "frequency shift in Hz");
  ops->add_option("--kernel", f.kernel, "real convolution kernel, comma separated");

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      app.get_subcommand_no_throw(args[0]) == nullptr) {
    err << "error: unknown subcommand '" << args[0] << "'\n" << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }
  if (eval_layers->count() > 0) f.layers_opt = eval_layers;
  if (sec_trials->count() > 0) f.trials_opt = sec_trials;
  if (opt_trials->count() > 0) f.trials_opt = opt_trials;

  try {
    if (synth->parsed()) return cmd_synth(f, out);
    if (train->parsed()) return cmd_train(f, out);
    if (eval->parsed()) return cmd_eval(f, out);
    if (thr->parsed()) return cmd_throughput(f, out);
    if (sec->parsed()) return cmd_secrecy(f, out);
    if (opt->parsed()) return cmd_optimize_alpha(f, out);
    if (ops->parsed()) return cmd_operators(f, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace rics::cli
