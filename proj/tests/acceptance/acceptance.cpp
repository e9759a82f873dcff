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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "harness.hpp"
#include "rics/analog_compute.hpp"
#include "rics/config.hpp"
#include "rics/design_a_throughput.hpp"
#include "rics/design_b_secrecy.hpp"
#include "rics/diffractive_onn.hpp"
#include "rics/geometry_link.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rics;
using Clock = std::chrono::steady_clock;

const fs::path kWork = fs::absolute("acceptance_work");

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
  double seconds = 0.0;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const auto t0 = Clock::now();
  CliRun r;
  r.code = cli::run_command(args, out, err);
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double parse_accuracy(const std::string& out) {
  std::istringstream in(out);
  std::string word;
  std::size_t layers = 0;
  double acc = NAN;
  in >> word >> layers >> word >> acc;
  return acc;
}

std::vector<std::string> default_run(std::vector<std::string> args) {
  args.insert(args.end(), {"--config", "default", "--set", "general.output=" + kWork.string()});
  return args;
}

// Criterion 1 ---------------------------------------------------------------

double g_acc2 = NAN;
double g_acc4 = NAN;

Outcome classifier_accuracy() {
  const auto r2 = cli(default_run({"train", "--layers", "2"}));
  const auto r4 = cli(default_run({"train", "--layers", "4"}));
  if (r2.code != 0 || r4.code != 0) return {false, "train failed: " + r2.err + r4.err};
  g_acc2 = parse_accuracy(r2.out);
  g_acc4 = parse_accuracy(r4.out);
  const bool ok = g_acc2 >= 0.80 && g_acc4 >= 0.85 && g_acc4 >= g_acc2 && r2.seconds <= 600.0 &&
                  r4.seconds <= 600.0;
  return {ok, "2-layer " + fmt("%.4f", g_acc2) + " (" + fmt("%.0f", r2.seconds) + " s), 4-layer " +
                  fmt("%.4f", g_acc4) + " (" + fmt("%.0f", r4.seconds) + " s)"};
}

// Criterion 2 ---------------------------------------------------------------

Outcome chance_level() {
  const Config c;
  const auto test = make_dataset(c.test_per_class, c.sensing_profile(), c.scenario(),
                                 c.dataset_params(), StreamKey(c.seed).derive(2));
  double sum = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) sum += onn::evaluate(onn::init_model(2, StreamKey(500 + s)), test).accuracy;
  const double mean = sum / 20.0;
  return {std::abs(mean - 0.125) <= 0.03, "mean untrained accuracy " + fmt("%.4f", mean)};
}

// Criterion 3 ---------------------------------------------------------------

Outcome gradient_check() {
  std::mt19937_64 eng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto model = onn::init_model(2, StreamKey(77), 4);
  double worst = 0.0;
  for (int probe = 0; probe < 20; ++probe) {
    std::vector<double> img(16);
    for (auto& v : img) v = u(eng);
    const auto label = class_from_index(eng() % kNumClasses);
    double temp = 0.0;
    for (double s : onn::forward(model, img)) temp += s / kNumClasses;
    const auto grad = onn::loss_gradient(model, img, label, temp);
    const std::size_t l = eng() % 2;
    const std::size_t p = eng() % 16;
    auto plus = model;
    auto minus = model;
    plus.masks()[l][p] += 1e-5;
    minus.masks()[l][p] -= 1e-5;
    const double fd = (onn::example_loss(plus, img, label, temp) - onn::example_loss(minus, img, label, temp)) / 2e-5;
    const double scale = std::max({std::abs(fd), std::abs(grad[l][p]), 1e-6});
    worst = std::max(worst, std::abs(fd - grad[l][p]) / scale);
  }
  return {worst <= 1e-4, "worst relative error " + fmt("%.2e", worst)};
}

// Criterion 4 ---------------------------------------------------------------

Outcome energy_conservation() {
  std::mt19937_64 eng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto model = onn::init_model(4, StreamKey(78));
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> img(256);
    double in = 0.0;
    for (auto& v : img) {
      v = u(eng);
      in += v * v;
    }
    double out = 0.0;
    for (auto x : onn::output_field(model, img)) out += std::norm(x);
    worst = std::max(worst, std::abs(out - in) / in);
  }
  return {worst <= 1e-9, "worst relative drift " + fmt("%.2e", worst)};
}

// Criterion 5 ---------------------------------------------------------------

Outcome throughput_trend() {
  const fs::path csv = kWork / "throughput.csv";
  const auto r = cli(default_run({"throughput", "--emulate-accuracy", "--out", csv.string()}));
  if (r.code != 0) return {false, "throughput failed: " + r.err};
  std::map<std::string, std::map<std::size_t, std::pair<double, double>>> curve;
  for (const auto& row : read_csv(csv)) {
    curve[row[0]][std::stoul(row[1])] = {std::stod(row[2]), std::stod(row[3])};
  }
  bool ok = r.seconds <= 120.0;
  std::string why;
  for (std::size_t n : {20u, 40u, 60u, 80u, 100u}) {
    const auto perfect = curve["RICS-perfect"][n].first;
    const auto four = curve["RICS-4layer"][n];
    const auto two = curve["RICS-2layer"][n].first;
    const auto fixed = curve["RIS-static"][n];
    if (!(perfect >= four.first && four.first >= two && two >= fixed.first)) {
      ok = false;
      why += " order@" + std::to_string(n);
    }
    if (!(four.first - four.second > fixed.first + fixed.second)) {
      ok = false;
      why += " ci@" + std::to_string(n);
    }
  }
  const double g20 = curve["RICS-4layer"][20].first - curve["RICS-2layer"][20].first;
  const double g100 = curve["RICS-4layer"][100].first - curve["RICS-2layer"][100].first;
  if (!(g100 > g20)) {
    ok = false;
    why += " gap";
  }
  return {ok, "gap(4-2) N=20 " + fmt("%.4g", g20) + " bps, N=100 " + fmt("%.4g", g100) + " bps, " +
                  fmt("%.2f", r.seconds) + " s" + why};
}

// Criterion 6 ---------------------------------------------------------------

Outcome secrecy_trend() {
  const fs::path csv = kWork / "secrecy.csv";
  const auto r = cli(default_run({"secrecy", "--alpha", "0.2,0.5,0.8", "--elements", "20,40,60,80,100",
                                  "--out", csv.string()}));
  if (r.code != 0) return {false, "secrecy failed: " + r.err};
  std::map<std::string, std::map<std::size_t, double>> s;
  for (const auto& row : read_csv(csv)) s[row[0]][std::stoul(row[1])] = std::stod(row[4]);
  bool ok = r.seconds <= 10.0;
  std::string why;
  for (const char* a : {"0.2", "0.5", "0.8"}) {
    double prev = -1.0;
    for (std::size_t n : {20u, 40u, 60u, 80u, 100u}) {
      const double gap = s[a][n] - s["baseline"][n];
      if (!(gap > 0.0 && gap > prev)) {
        ok = false;
        why += std::string(" gap@") + a + "/" + std::to_string(n);
      }
      prev = gap;
    }
  }
  if (!(s["0.2"][20] > s["0.8"][20] && s["0.8"][100] > s["0.2"][100])) {
    ok = false;
    why += " ends";
  }

  // Crossover location at unit resolution.
  std::string grid;
  for (int n = 5; n <= 200; ++n) grid += (n > 5 ? "," : "") + std::to_string(n);
  const fs::path fine = kWork / "secrecy_fine.csv";
  if (cli(default_run({"secrecy", "--alpha", "0.2,0.8", "--elements", grid, "--out", fine.string()})).code != 0) {
    return {false, "fine sweep failed"};
  }
  std::map<std::string, std::map<std::size_t, double>> f;
  for (const auto& row : read_csv(fine)) f[row[0]][std::stoul(row[1])] = std::stod(row[4]);
  std::size_t cross = 0;
  for (std::size_t n = 5; n <= 200 && cross == 0; ++n) {
    if (f["0.8"][n] > f["0.2"][n]) cross = n;
  }
  if (cross < 40 || cross > 80) {
    ok = false;
    why += " crossover";
  }
  return {ok, "crossover N=" + std::to_string(cross) + ", " + fmt("%.2f", r.seconds) + " s" + why};
}

// Criterion 7 ---------------------------------------------------------------

Outcome operator_suite() {
  std::mt19937_64 eng(51);
  std::normal_distribution<double> g(0.0, 1.0);
  auto noise = [&](std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = {g(eng), g(eng)};
    return v;
  };
  double conv_err = 0.0;
  for (std::size_t n = 1; n <= 64; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const auto x = noise(n);
      const auto h = noise(k);
      const auto y = analog::convolve(ComplexSignal(x, 1.0), h);
      for (std::size_t i = 0; i < n; ++i) {
        cplx ref{};
        for (std::size_t j = 0; j < k; ++j) ref += h[j] * x[(i + n - j) % n];
        conv_err = std::max(conv_err, std::abs(y.samples()[i] - ref));
      }
    }
  }

  const std::size_t n = 512;
  const double fs = 10e6;
  std::vector<cplx> tone(n);
  for (std::size_t i = 0; i < n; ++i) tone[i] = std::polar(1.0, 2.0 * std::numbers::pi * 40.0 * i / n);
  const ComplexSignal t(tone, fs);
  bool peak_ok = true;
  double power_err = 0.0;
  for (int shift : {-100, -7, 3, 150}) {
    const auto y = analog::frequency_shift(t, shift * fs / n);
    std::size_t best = 0;
    double best_p = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      cplx acc{};
      for (std::size_t i = 0; i < n; ++i) acc += y.samples()[i] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * i) / n);
      if (std::norm(acc) > best_p) {
        best_p = std::norm(acc);
        best = k;
      }
    }
    peak_ok = peak_ok && best == static_cast<std::size_t>((40 + shift + static_cast<int>(n)) % n);
    power_err = std::max(power_err, std::abs(y.mean_power() - t.mean_power()));
  }

  double calc_err = 0.0;
  for (std::size_t len : {64u, 255u, 1024u}) {
    auto x = noise(len);
    cplx mean{};
    for (auto v : x) mean += v / static_cast<double>(len);
    for (auto& v : x) v -= mean;
    const auto back = analog::integrate(analog::differentiate(ComplexSignal(x, 1e6)));
    for (std::size_t i = 0; i < len; ++i) calc_err = std::max(calc_err, std::abs(back.samples()[i] - x[i]));
  }
  const bool ok = conv_err <= 1e-9 && peak_ok && power_err <= 1e-12 && calc_err <= 1e-9;
  return {ok, "convolve " + fmt("%.1e", conv_err) + ", shift peak " + (peak_ok ? "exact" : "wrong") +
                  ", power " + fmt("%.1e", power_err) + ", int(diff) " + fmt("%.1e", calc_err)};
}

// Criterion 8 ---------------------------------------------------------------

Outcome link_budget_oracles() {
  const bool noise_ok = noise_power_dbm(-174.0, 10e6) == -104.0;
  double worst = 0.0;
  auto hand = [](double d, double f, double e) {
    return std::pow(10.0, -(20.0 * std::log10(f) + 10.0 * e * std::log10(d) - 147.55) / 10.0);
  };
  struct P {
    double d, f, e;
  };
  for (const P p : {P{80.0, 3.5e9, 2.0}, P{50.0, 3.5e9, 3.0}, P{250.0, 28e9, 2.2}}) {
    worst = std::max(worst, std::abs(path_gain(p.d, p.f, p.e) / hand(p.d, p.f, p.e) - 1.0));
  }
  struct F {
    double tx;
    std::size_t n;
    SpectrumClass truth;
    design_a::SlotAllocation alloc;
  };
  const design_a::FrameParams fp;
  for (const F c : {F{0.2, 60, SpectrumClass::U1, {12, 0, 0}}, F{0.05, 20, SpectrumClass::U1U2U3, {4, 4, 4}},
                    F{1.0, 100, SpectrumClass::U1U3, {6, 0, 6}}}) {
    RfConstants rf;
    rf.tx_power_w = c.tx;
    rf.element_gain_dbi = 7.0;
    const auto s = place_scenario(60.0, 80.0, 160.0, 50.0, rf);
    const double eg = std::pow(10.0, 0.7);
    const double m = static_cast<double>(c.n - 4);
    const double snr = c.tx * m * m * hand(60.0, 3.5e9, 2.0) * eg * hand(80.0, 3.5e9, 2.0) * eg / std::pow(10.0, -13.4);
    double expect = 0.0;
    const auto act = activity(c.truth);
    for (std::size_t u = 0; u < 3; ++u) {
      if (act[u] && c.alloc[u] > 0) expect += std::min(fp.payload_bits, c.alloc[u] * fp.slot_duration_s * 10e6 * std::log2(1.0 + snr));
    }
    const double got = design_a::frame_throughput(c.truth, c.alloc, s, configure_ra(c.n, 4), fp);
    worst = std::max(worst, std::abs(got / expect - 1.0));
  }
  return {noise_ok && worst <= 1e-9,
          std::string("noise ") + (noise_ok ? "-104 dBm exact" : "wrong") + ", worst relative " + fmt("%.1e", worst)};
}

// Criterion 9 ---------------------------------------------------------------

Outcome determinism() {
  const fs::path d = kWork / "determinism";
  fs::create_directories(d);
  // Reduced sizes keep the three runs per subcommand short.
  const std::vector<std::string> small{"--set", "synth.train_per_class=40", "--set", "synth.test_per_class=20",
                                       "--set", "onn.epochs=5", "--seed", "2024"};
  auto args = [&](std::vector<std::string> a, const std::string& tag, const std::string& workers) {
    a.insert(a.end(), small.begin(), small.end());
    a.insert(a.end(), {"--workers", workers, "--set", "general.output=" + (d / tag).string()});
    return a;
  };
  std::vector<std::string> failures;
  auto compare = [&](const std::string& name, const std::function<std::string(const std::string&)>& artifact,
                     const std::function<std::vector<std::string>(const std::string&, const std::string&)>& make) {
    std::string ref;
    bool same = true;
    for (const auto& [tag, workers] : std::vector<std::pair<std::string, std::string>>{{"a0", "1"}, {"b1", "1"}, {"c2", "8"}}) {
      const auto r = cli(make(tag, workers));
      if (r.code != 0) {
        failures.push_back(name + " exit " + std::to_string(r.code) + ": " + r.err);
        return;
      }
      // stdout names the per-run output directory; mask it.
      std::string shown = r.out;
      for (const std::string dir : {(d / ("e" + tag)).string(), (d / tag).string()}) {
        for (auto pos = shown.find(dir); pos != std::string::npos; pos = shown.find(dir)) shown.replace(pos, dir.size(), "<run>");
      }
      const std::string bytes = shown + "\x1f" + artifact(tag);
      if (ref.empty()) {
        ref = bytes;
      } else if (bytes != ref) {
        same = false;
      }
    }
    if (!same) failures.push_back(name);
  };
  auto strip_dir = [](std::string s, const std::string& dir) {
    for (auto pos = s.find(dir); pos != std::string::npos; pos = s.find(dir)) s.erase(pos, dir.size());
    return s;
  };
  auto tree = [&](const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) all += fs::relative(f, root).string() + "\n" + slurp(f);
    return all;
  };

  compare("synth", [&](const std::string& t) { return tree(d / t); },
          [&](const std::string& t, const std::string& w) { return args({"synth"}, t, w); });
  compare("train", [&](const std::string& t) { return tree(d / t); },
          [&](const std::string& t, const std::string& w) { return args({"train", "--layers", "2"}, t, w); });
  // eval and throughput read the checkpoint trained above.
  for (const std::string t : {"a0", "b1", "c2"}) {
    fs::create_directories(d / ("e" + t));
    fs::copy_file(d / t / "onn_2layer.ckpt", d / ("e" + t) / "onn_2layer.ckpt", fs::copy_options::overwrite_existing);
    fs::copy_file(d / t / "onn_2layer.ckpt", d / ("e" + t) / "onn_4layer.ckpt", fs::copy_options::overwrite_existing);
    fs::copy_file(d / t / "onn_2layer.ckpt.confusion.csv", d / ("e" + t) / "onn_2layer.ckpt.confusion.csv",
                  fs::copy_options::overwrite_existing);
    fs::copy_file(d / t / "onn_2layer.ckpt.confusion.csv", d / ("e" + t) / "onn_4layer.ckpt.confusion.csv",
                  fs::copy_options::overwrite_existing);
  }
  const std::map<std::string, std::string> eval_dir{{"a0", "ea0"}, {"b1", "eb1"}, {"c2", "ec2"}};
  auto in_eval = [&](std::vector<std::string> a, const std::string& t, const std::string& w) {
    a.insert(a.end(), small.begin(), small.end());
    a.insert(a.end(), {"--workers", w, "--set", "general.output=" + (d / eval_dir.at(t)).string()});
    return a;
  };
  compare("eval", [&](const std::string& t) { return slurp(d / eval_dir.at(t) / "conf.csv"); },
          [&](const std::string& t, const std::string& w) {
            return in_eval({"eval", "--layers", "2", "--out", (d / eval_dir.at(t) / "conf.csv").string()}, t, w);
          });
  compare("throughput (emulated)", [&](const std::string& t) { return slurp(d / eval_dir.at(t) / "thr.csv"); },
          [&](const std::string& t, const std::string& w) {
            return in_eval({"throughput", "--emulate-accuracy", "--out", (d / eval_dir.at(t) / "thr.csv").string()}, t, w);
          });
  compare("throughput (model)", [&](const std::string& t) { return slurp(d / eval_dir.at(t) / "thr_model.csv"); },
          [&](const std::string& t, const std::string& w) {
            return in_eval({"throughput", "--set", "throughput.emulate=false", "--trials", "200", "--out",
                            (d / eval_dir.at(t) / "thr_model.csv").string()},
                           t, w);
          });
  compare("secrecy", [&](const std::string& t) { return slurp(d / t / "secrecy.csv"); },
          [&](const std::string& t, const std::string& w) { return args({"secrecy"}, t, w); });
  compare("secrecy (fading)", [&](const std::string& t) { return slurp(d / t / "secrecy.csv"); },
          [&](const std::string& t, const std::string& w) {
            return args({"secrecy", "--set", "scenario.fading=true", "--trials", "10000", "--elements", "20,60"}, t, w);
          });
  compare("optimize-alpha", [&](const std::string& t) { return slurp(d / t / "optimize_alpha.csv"); },
          [&](const std::string& t, const std::string& w) { return args({"optimize-alpha"}, t, w); });
  const fs::path sig = d / "a0" / "train" / "signal_00003.bin";
  const fs::path sig_src = fs::exists(sig) ? sig : d / "a0" / "dataset" / "train" / "signal_00003.bin";
  compare("operators", [&](const std::string& t) { return slurp(d / t / "op.bin"); },
          [&](const std::string& t, const std::string& w) {
            return args({"operators", "--in", sig_src.string(), "--op", "differentiate", "--out", (d / t / "op.bin").string()}, t, w);
          });

  std::string detail = "synth, train, eval, throughput, secrecy, optimize-alpha, operators byte-identical "
                       "over 2 runs and workers 1/8";
  if (!failures.empty()) {
    detail = "differs:";
    for (const auto& f : failures) detail += " [" + strip_dir(f, d.string()) + "]";
  }
  return {failures.empty(), detail};
}

// Criterion 10 --------------------------------------------------------------

Outcome optimize_alpha_exhaustive() {
  std::mt19937_64 eng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int exact = 0;
  for (int trial = 0; trial < 5; ++trial) {
    RfConstants rf;
    rf.element_gain_dbi = 10.0 * u(eng);
    rf.leak_obstruction_db = 25.0 * u(eng);
    rf.direct_exponent = 2.5 + u(eng);
    const auto s = place_scenario(20.0 + 80.0 * u(eng), 20.0 + 100.0 * u(eng), 30.0 + 150.0 * u(eng),
                                  10.0 + 90.0 * u(eng), rf);
    const std::size_t n = 10 + eng() % 150;
    const auto best = design_b::optimize_alpha(s, n, 0.01);
    double brute = -1.0;
    double brute_alpha = -1.0;
    for (int k = 0; k <= 100; ++k) {
      const double a = std::min(1.0, k * 0.01);
      const auto r = design_b::link_rates(s, configure_rr(n, a), {});
      const double sec = design_b::secrecy_rate(r.legit, r.eve);
      if (sec > brute) {
        brute = sec;
        brute_alpha = a;
      }
    }
    if (best.secrecy == brute && best.alpha == brute_alpha) ++exact;
  }
  return {exact == 5, std::to_string(exact) + "/5 scenarios equal the brute-force maximum"};
}

}  // namespace

int main() {
  fs::remove_all(kWork);
  fs::create_directories(kWork);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"classifier accuracy", classifier_accuracy},
      {"chance level", chance_level},
      {"gradient check", gradient_check},
      {"energy conservation", energy_conservation},
      {"throughput trend", throughput_trend},
      {"secrecy trend", secrecy_trend},
      {"analog operators", operator_suite},
      {"link budget oracles", link_budget_oracles},
      {"determinism", determinism},
      {"optimize-alpha exhaustive", optimize_alpha_exhaustive},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s: %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
