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

// Locates the N at which a high-alpha split overtakes a low-alpha split in
// secrecy rate, for the configured scenario and optionally over a grid of
// element gains and eavesdropper path obstructions.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rics/config.hpp"
#include "rics/design_b_secrecy.hpp"
#include "rics/errors.hpp"

namespace {

struct Crossing {
  std::optional<std::size_t> n;
  double margin_low = 0.0;   // S(low) - S(high) at n_low
  double margin_high = 0.0;  // S(high) - S(low) at n_high
};

double secrecy(const rics::Scenario& s, std::size_t n, double alpha,
               const rics::design_b::SecrecyOptions& o, double eff) {
  const auto r = rics::design_b::link_rates(s, rics::configure_rr(n, alpha, {}, {}, eff), o);
  return rics::design_b::secrecy_rate(r.legit, r.eve);
}

Crossing find_crossing(const rics::Config& c, double lo, double hi, std::size_t n_low,
                       std::size_t n_high, std::size_t n_max) {
  const auto s = c.scenario();
  const auto o = c.secrecy_options();
  Crossing x;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (secrecy(s, n, hi, o, c.efficiency) > secrecy(s, n, lo, o, c.efficiency)) {
      x.n = n;
      break;
    }
  }
  x.margin_low = secrecy(s, n_low, lo, o, c.efficiency) - secrecy(s, n_low, hi, o, c.efficiency);
  x.margin_high = secrecy(s, n_high, hi, o, c.efficiency) - secrecy(s, n_high, lo, o, c.efficiency);
  return x;
}

void print_row(double gain, double obstruction, const Crossing& x) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%g,%g,%s,%.6f,%.6f\n", gain, obstruction,
                x.n ? std::to_string(*x.n).c_str() : "none", x.margin_low, x.margin_high);
  std::cout << buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secrecy crossover calibration", "rics_calibrate"};
  std::string config = "default";
  double lo = 0.2;
  double hi = 0.8;
  std::size_t n_low = 20;
  std::size_t n_high = 100;
  std::size_t n_max = 400;
  bool sweep = false;
  app.add_option("--config", config, "config file or 'default'");
  app.add_option("--low", lo, "low alpha")->check(CLI::Range(0.0, 1.0));
  app.add_option("--high", hi, "high alpha")->check(CLI::Range(0.0, 1.0));
  app.add_option("--n-low", n_low, "N where the low alpha should win");
  app.add_option("--n-high", n_high, "N where the high alpha should win");
  app.add_option("--n-max", n_max, "largest N searched");
  app.add_flag("--sweep", sweep, "scan element gain 0..12 dBi and obstruction 0..30 dB");
  CLI11_PARSE(app, argc, argv);

  try {
    rics::Config c = rics::parse_config(config);
    std::cout << "element_gain_dbi,leak_obstruction_db,crossover_n,margin_at_n_low,margin_at_n_high\n";
    if (!sweep) {
      print_row(c.element_gain_dbi, c.leak_obstruction_db, find_crossing(c, lo, hi, n_low, n_high, n_max));
      return 0;
    }
    for (double g = 0.0; g <= 12.0; g += 1.0) {
      for (double l = 0.0; l <= 30.0; l += 2.0) {
        c.element_gain_dbi = g;
        c.leak_obstruction_db = l;
        print_row(g, l, find_crossing(c, lo, hi, n_low, n_high, n_max));
      }
    }
  } catch (const rics::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
