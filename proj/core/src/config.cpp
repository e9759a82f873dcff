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

#include "rics/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "rics/errors.hpp"

namespace rics {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void bad_value(const Override& s, const std::string& why) {
  std::string where = s.line > 0 ? " (line " + std::to_string(s.line) + ")" : "";
  throw ConfigError(ConfigError::Kind::OutOfRange, s.key, s.line,
                    "invalid value '" + s.value + "' for " + s.key + where + ": " + why);
}

double to_double(const Override& s, std::string_view text) {
  const std::string buf(trim(text));
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    bad_value(s, "expected a finite number");
  }
  return v;
}

std::uint64_t to_u64(const Override& s, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    bad_value(s, "expected a non-negative integer");
  }
  return v;
}

template <class T, class F>
std::vector<T> to_list(const Override& s, F parse_one) {
  std::vector<T> out;
  std::string_view rest = s.value;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_one(s, rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

struct Field {
  std::string section;
  std::string name;
  std::function<void(Config&, const Override&)> set;
  std::function<std::string(const Config&)> get;

  [[nodiscard]] std::string qualified() const { return section + "." + name; }
};

using Check = std::function<bool(double)>;

Field real(std::string sec, std::string name, double Config::*m, Check ok, std::string rule) {
  return {std::move(sec), std::move(name),
          [m, ok, rule](Config& c, const Override& s) {
            const double v = to_double(s, s.value);
            if (!ok(v)) bad_value(s, rule);
            c.*m = v;
          },
          [m](const Config& c) { return fmt_double(c.*m); }};
}

template <class T>
Field integer(std::string sec, std::string name, T Config::*m, std::uint64_t lo, std::uint64_t hi) {
  return {std::move(sec), std::move(name),
          [m, lo, hi](Config& c, const Override& s) {
            const auto v = to_u64(s, s.value);
            if (v < lo || v > hi) {
              bad_value(s, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            }
            c.*m = static_cast<T>(v);
          },
          [m](const Config& c) { return std::to_string(c.*m); }};
}

Field boolean(std::string sec, std::string name, bool Config::*m) {
  return {std::move(sec), std::move(name),
          [m](Config& c, const Override& s) {
            const auto v = trim(s.value);
            if (v == "true" || v == "1") {
              c.*m = true;
            } else if (v == "false" || v == "0") {
              c.*m = false;
            } else {
              bad_value(s, "expected true or false");
            }
          },
          [m](const Config& c) { return std::string(c.*m ? "true" : "false"); }};
}

Field text(std::string sec, std::string name, std::string Config::*m) {
  return {std::move(sec), std::move(name),
          [m](Config& c, const Override& s) {
            const auto v = trim(s.value);
            if (v.empty()) bad_value(s, "must not be empty");
            c.*m = std::string(v);
          },
          [m](const Config& c) { return c.*m; }};
}

Field real_list(std::string sec, std::string name, std::vector<double> Config::*m, Check ok,
                std::string rule) {
  return {std::move(sec), std::move(name),
          [m, ok, rule](Config& c, const Override& s) {
            auto v = to_list<double>(s, to_double);
            for (double x : v) {
              if (!ok(x)) bad_value(s, rule);
            }
            c.*m = std::move(v);
          },
          [m](const Config& c) {
            std::string out;
            for (double x : c.*m) out += (out.empty() ? "" : ", ") + fmt_double(x);
            return out;
          }};
}

Field size_list(std::string sec, std::string name, std::vector<std::size_t> Config::*m,
                std::size_t lo, std::size_t hi) {
  return {std::move(sec), std::move(name),
          [m, lo, hi](Config& c, const Override& s) {
            std::vector<std::size_t> v;
            for (auto x : to_list<std::uint64_t>(s, to_u64)) {
              if (x < lo || x > hi) {
                bad_value(s, "entries must lie in [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
              }
              v.push_back(static_cast<std::size_t>(x));
            }
            c.*m = std::move(v);
          },
          [m](const Config& c) {
            std::string out;
            for (auto x : c.*m) out += (out.empty() ? "" : ", ") + std::to_string(x);
            return out;
          }};
}

bool positive(double v) { return v > 0.0; }
bool unit(double v) { return v >= 0.0 && v <= 1.0; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    constexpr std::uint64_t big = 1'000'000'000;
    std::vector<Field> f;
    f.push_back(integer("general", "seed", &Config::seed, 0, UINT64_MAX));
    f.push_back(text("general", "output", &Config::output));
    f.push_back(integer("general", "workers", &Config::workers, 1, 1024));

    f.push_back(real("scenario", "d_user_m", &Config::d_user_m, positive, "must be > 0"));
    f.push_back(real("scenario", "d_bs_m", &Config::d_bs_m, positive, "must be > 0"));
    f.push_back(real("scenario", "angle_deg", &Config::angle_deg,
                     [](double v) { return v > 0.0 && v <= 180.0; }, "must lie in (0, 180]"));
    f.push_back(real("scenario", "d_eve_m", &Config::d_eve_m, positive, "must be > 0"));
    f.push_back(real("scenario", "user_spread_deg", &Config::user_spread_deg,
                     [](double v) { return v >= 0.0 && v < 90.0; }, "must lie in [0, 90)"));
    f.push_back(real("scenario", "tx_power_dbm", &Config::tx_power_dbm,
                     [](double v) { return v > -100.0 && v < 100.0; }, "must lie in (-100, 100)"));
    f.push_back(real("scenario", "bandwidth_hz", &Config::bandwidth_hz, positive, "must be > 0"));
    f.push_back(real("scenario", "noise_density_dbm_hz", &Config::noise_density_dbm_hz,
                     [](double v) { return v > -250.0 && v < 0.0; }, "must lie in (-250, 0)"));
    f.push_back(real("scenario", "carrier_hz", &Config::carrier_hz, positive, "must be > 0"));
    f.push_back(real("scenario", "ris_exponent", &Config::ris_exponent,
                     [](double v) { return v >= 2.0 && v <= 6.0; }, "must lie in [2, 6]"));
    f.push_back(real("scenario", "direct_exponent", &Config::direct_exponent,
                     [](double v) { return v >= 2.0 && v <= 6.0; }, "must lie in [2, 6]"));
    f.push_back(real("scenario", "element_gain_dbi", &Config::element_gain_dbi,
                     [](double v) { return v >= 0.0 && v <= 20.0; }, "must lie in [0, 20]"));
    f.push_back(real("scenario", "leak_obstruction_db", &Config::leak_obstruction_db,
                     [](double v) { return v >= 0.0 && v <= 100.0; }, "must lie in [0, 100]"));
    f.push_back(boolean("scenario", "fading", &Config::fading));
    f.push_back(integer("scenario", "fading_trials", &Config::fading_trials, 1, big));

    f.push_back(size_list("surface", "elements", &Config::elements, 1, 100000));
    f.push_back(real_list("surface", "alpha", &Config::alphas, unit, "entries must lie in [0, 1]"));
    f.push_back(integer("surface", "n_absorb", &Config::n_absorb, 1, 100000));
    f.push_back(integer("surface", "sensing_elements", &Config::sensing_elements, 2, 100000));
    f.push_back(real("surface", "efficiency", &Config::efficiency,
                     [](double v) { return v > 0.0 && v <= 1.0; }, "must lie in (0, 1]"));
    f.push_back(real("surface", "alpha_step", &Config::alpha_step,
                     [](double v) { return v > 0.0 && v <= 0.5; }, "must lie in (0, 0.5]"));

    f.push_back(integer("synth", "n_samples", &Config::n_samples, 256, 1u << 22));
    f.push_back(integer("synth", "samples_per_symbol", &Config::samples_per_symbol, 2, 64));
    f.push_back(real("synth", "rolloff", &Config::rolloff,
                     [](double v) { return v > 0.0 && v <= 1.0; }, "must lie in (0, 1]"));
    f.push_back(integer("synth", "filter_span_symbols", &Config::filter_span_symbols, 1, 64));
    f.push_back(real("synth", "power_spread_db", &Config::power_spread_db,
                     [](double v) { return v >= 0.0 && v <= 40.0; }, "must lie in [0, 40]"));
    f.push_back(integer("synth", "train_per_class", &Config::train_per_class, 1, big));
    f.push_back(integer("synth", "test_per_class", &Config::test_per_class, 1, big));

    f.push_back(integer("onn", "layers", &Config::layers, 1, 64));
    f.push_back(integer("onn", "epochs", &Config::epochs, 0, big));
    f.push_back(real("onn", "learning_rate", &Config::learning_rate,
                     [](double v) { return v >= 0.0; }, "must be >= 0"));
    f.push_back(integer("onn", "batch_size", &Config::batch_size, 1, big));
    f.push_back(integer("onn", "lr_decay_every", &Config::lr_decay_every, 0, big));
    f.push_back(real("onn", "lr_decay", &Config::lr_decay,
                     [](double v) { return v > 0.0 && v <= 1.0; }, "must lie in (0, 1]"));

    f.push_back(integer("throughput", "frames", &Config::frames, 1, big));
    f.push_back(integer("throughput", "frame_slots", &Config::frame_slots, 1, 100000));
    f.push_back(real("throughput", "slot_duration_s", &Config::slot_duration_s, positive,
                     "must be > 0"));
    f.push_back(real("throughput", "payload_bits", &Config::payload_bits, positive, "must be > 0"));
    f.push_back(boolean("throughput", "user_direct_path", &Config::user_direct_path));
    f.push_back(boolean("throughput", "emulate", &Config::emulate));
    f.push_back(text("throughput", "model_2layer", &Config::model_2layer));
    f.push_back(text("throughput", "model_4layer", &Config::model_4layer));

    f.push_back(boolean("secrecy", "sender_direct_path", &Config::sender_direct_path));
    Field op = text("secrecy", "operator", &Config::op);
    op.set = [](Config& c, const Override& s) {
      const std::string v(trim(s.value));
      try {
        (void)analog::parse_operator_kind(v);
      } catch (const UnsupportedOperatorError& e) {
        bad_value(s, e.what());
      }
      c.op = v;
    };
    f.push_back(std::move(op));
    f.push_back(real("secrecy", "shift_hz", &Config::shift_hz,
                     [](double v) { return std::isfinite(v); }, "must be finite"));
    f.push_back(real_list("secrecy", "kernel", &Config::kernel,
                          [](double v) { return std::isfinite(v); }, "entries must be finite"));
    return f;
  }();
  return table;
}

const Field& find_field(const std::string& key, std::size_t line) {
  const Field* hit = nullptr;
  std::size_t hits = 0;
  const bool qualified = key.find('.') != std::string::npos;
  for (const auto& f : fields()) {
    if (qualified ? f.qualified() == key : f.name == key) {
      hit = &f;
      ++hits;
    }
  }
  if (hits != 1) {
    throw ConfigError(ConfigError::Kind::UnknownKey, key, line,
                      "unknown configuration key '" + key + "'" +
                          (line > 0 ? " (line " + std::to_string(line) + ")" : ""));
  }
  return *hit;
}

}  // namespace

void apply_setting(Config& config, const Override& setting) {
  const Field& f = find_field(setting.key, setting.line);
  Override named = setting;
  named.key = f.qualified();
  f.set(config, named);
}

Config parse_config_text(std::string_view text, Config base) {
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(ConfigError::Kind::Syntax, std::string(line), line_no,
                          "malformed section header at line " + std::to_string(line_no));
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty()) {
      throw ConfigError(ConfigError::Kind::Syntax, std::string(line), line_no,
                        "expected 'key = value' at line " + std::to_string(line_no));
    }
    const std::string name(trim(line.substr(0, eq)));
    if (section.empty()) {
      throw ConfigError(ConfigError::Kind::Syntax, name, line_no,
                        "key '" + name + "' outside any section at line " + std::to_string(line_no));
    }
    apply_setting(base, {section + "." + name, std::string(trim(line.substr(eq + 1))), line_no});
  }
  return base;
}

Config parse_config(const std::filesystem::path& path, const std::vector<Override>& overrides) {
  Config c;
  if (path != "default") {
    std::ifstream in(path);
    if (!in) {
      throw ConfigError(ConfigError::Kind::MissingFile, path.string(), 0,
                        "cannot open config file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    c = parse_config_text(ss.str());
  }
  for (const auto& o : overrides) apply_setting(c, o);
  validate(c);
  return c;
}

void validate(const Config& c) {
  auto fail = [](const char* key, const std::string& why) {
    throw ConfigError(ConfigError::Kind::OutOfRange, key, 0, std::string(key) + ": " + why);
  };
  if (c.elements.empty()) fail("surface.elements", "grid must not be empty");
  if (c.alphas.empty()) fail("surface.alpha", "grid must not be empty");
  for (auto n : c.elements) {
    if (n <= c.n_absorb) fail("surface.elements", "every N must exceed n_absorb");
  }
  if (c.sensing_elements <= c.n_absorb) fail("surface.sensing_elements", "must exceed n_absorb");
  if (c.kernel.empty()) fail("secrecy.kernel", "must not be empty");
  if (std::abs(c.shift_hz) >= c.bandwidth_hz / 2.0) fail("secrecy.shift_hz", "must be below B/2");
}

std::string serialize(const Config& config) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      out += (section.empty() ? "[" : "\n[") + f.section + "]\n";
      section = f.section;
    }
    out += f.name + " = " + f.get(config) + "\n";
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.push_back(f.qualified());
  return keys;
}

RfConstants Config::rf() const {
  RfConstants rf;
  rf.tx_power_w = dbm_to_watts(tx_power_dbm);
  rf.bandwidth_hz = bandwidth_hz;
  rf.noise_density_dbm_hz = noise_density_dbm_hz;
  rf.carrier_hz = carrier_hz;
  rf.ris_exponent = ris_exponent;
  rf.direct_exponent = direct_exponent;
  rf.element_gain_dbi = element_gain_dbi;
  rf.leak_obstruction_db = leak_obstruction_db;
  rf.fading = fading;
  return rf;
}

Scenario Config::scenario() const {
  return place_scenario(d_user_m, d_bs_m, angle_deg, d_eve_m, rf(), user_spread_deg);
}

DatasetParams Config::dataset_params() const {
  DatasetParams p;
  p.synth.sample_rate_hz = bandwidth_hz;
  p.synth.noise_power_w = scenario().noise_power_w();
  p.synth.subband_offsets_hz = {-0.3 * bandwidth_hz, 0.0, 0.3 * bandwidth_hz};
  p.synth.samples_per_symbol = samples_per_symbol;
  p.synth.rolloff = rolloff;
  p.synth.filter_span_symbols = filter_span_symbols;
  p.synth.power_spread_db = power_spread_db;
  p.per_user_power_w = dbm_to_watts(tx_power_dbm);
  p.n_samples = n_samples;
  return p;
}

RicsProfile Config::sensing_profile() const {
  return configure_ra(sensing_elements, n_absorb, {}, efficiency);
}

onn::TrainOptions Config::train_options() const {
  onn::TrainOptions o;
  o.epochs = epochs;
  o.learning_rate = learning_rate;
  o.batch_size = batch_size;
  o.lr_decay_every = lr_decay_every;
  o.lr_decay = lr_decay;
  o.workers = workers;
  return o;
}

analog::OperatorSpec Config::operator_spec() const {
  analog::OperatorSpec s;
  s.kind = analog::parse_operator_kind(op);
  s.kernel.assign(kernel.begin(), kernel.end());
  s.shift_hz = shift_hz;
  return s;
}

design_b::SecrecyOptions Config::secrecy_options() const {
  design_b::SecrecyOptions o;
  o.direct_path = sender_direct_path;
  o.op = operator_spec();
  o.fading_trials = fading_trials;
  return o;
}

design_a::FrameParams Config::frame_params() const {
  design_a::FrameParams f;
  f.frame_slots = frame_slots;
  f.slot_duration_s = slot_duration_s;
  f.payload_bits = payload_bits;
  f.direct_path = user_direct_path;
  return f;
}

}  // namespace rics
