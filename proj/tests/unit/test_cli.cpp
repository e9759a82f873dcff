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
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "harness.hpp"
#include "rics/complex_signal.hpp"
#include "rics/diffractive_onn.hpp"

namespace {

namespace fs = std::filesystem;
using rics::cli::run_command;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rics_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  [[nodiscard]] std::string p(const std::string& name) const { return (dir_ / name).string(); }

  // Small datasets and few epochs keep the training subcommands quick.
  [[nodiscard]] std::vector<std::string> small(std::vector<std::string> args) const {
    for (const char* s : {"synth.train_per_class=6", "synth.test_per_class=5", "onn.epochs=3",
                          "synth.n_samples=1024"}) {
      args.push_back("--set");
      args.push_back(s);
    }
    args.push_back("--set");
    args.push_back("general.output=" + dir_.string());
    return args;
  }

  fs::path dir_;
};

TEST_F(Cli, UnknownSubcommandIsUsageError) {
  const auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("frobnicate"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"secrecy", "--bogus-flag"}).code, 2);
}

TEST_F(Cli, ModuleErrorsExitOne) {
  const auto r = run({"secrecy", "--alpha", "1.5", "--out", p("s.csv")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("surface.alpha"), std::string::npos);
  EXPECT_EQ(run({"secrecy", "--config", p("missing.ini")}).code, 1);
  EXPECT_EQ(run({"operators", "--in", p("missing.bin")}).code, 1);
}

TEST_F(Cli, SecrecyRowCountAndDeterminism) {
  ASSERT_EQ(run({"secrecy", "--config", "default", "--out", p("a.csv")}).code, 0);
  ASSERT_EQ(run({"secrecy", "--config", "default", "--out", p("b.csv"), "--workers", "8"}).code, 0);
  const auto a = slurp(p("a.csv"));
  EXPECT_EQ(a, slurp(p("b.csv")));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 3 * 5 + 5);
  ASSERT_EQ(run({"secrecy", "--alpha", "0.1,0.3", "--elements", "10,30,50", "--out", p("c.csv")}).code, 0);
  const auto c = slurp(p("c.csv"));
  EXPECT_EQ(std::count(c.begin(), c.end(), '\n'), 1 + 2 * 3 + 3);
}

TEST_F(Cli, TrainThenEvalIsConsistent) {
  ASSERT_EQ(run(small({"train", "--layers", "2", "--seed", "4"})).code, 0);
  const fs::path ckpt = dir_ / "onn_2layer.ckpt";
  ASSERT_TRUE(fs::exists(ckpt));
  ASSERT_TRUE(fs::exists(rics::onn::confusion_sidecar(ckpt)));
  const auto r = run(small({"eval", "--layers", "2", "--seed", "4", "--out", p("conf.csv")}));
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string word;
  std::size_t layers = 0;
  double acc = -1.0;
  in >> word >> layers >> word >> acc;
  EXPECT_EQ(layers, 2u);
  EXPECT_GE(acc, 0.0);
  EXPECT_LE(acc, 1.0);
  const auto conf = rics::onn::load_confusion(p("conf.csv"));
  double trace = 0.0;
  for (std::size_t i = 0; i < rics::kNumClasses; ++i) trace += conf[i][i];
  EXPECT_NEAR(acc, trace / rics::kNumClasses, 1e-12);
  // eval reproduces the accuracy recorded by train.
  EXPECT_EQ(conf, rics::onn::load_confusion(rics::onn::confusion_sidecar(ckpt)));
}

TEST_F(Cli, TrainIsDeterministicAcrossWorkers) {
  ASSERT_EQ(run(small({"train", "--out", p("w1.ckpt"), "--workers", "1"})).code, 0);
  ASSERT_EQ(run(small({"train", "--out", p("w8.ckpt"), "--workers", "8"})).code, 0);
  EXPECT_EQ(slurp(p("w1.ckpt")), slurp(p("w8.ckpt")));
  EXPECT_EQ(slurp(p("w1.ckpt.confusion.csv")), slurp(p("w8.ckpt.confusion.csv")));
}

TEST_F(Cli, ThroughputEmulationFromAccuracies) {
  const std::vector<std::string> args{"throughput", "--emulate-accuracy", "0.85,0.9", "--trials", "200"};
  std::vector<std::string> a(args);
  a.insert(a.end(), {"--out", p("t1.csv")});
  std::vector<std::string> b(args);
  b.insert(b.end(), {"--out", p("t2.csv"), "--workers", "8"});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  const auto t = slurp(p("t1.csv"));
  EXPECT_EQ(t, slurp(p("t2.csv")));
  EXPECT_EQ(t.rfind("scheme,n_elements,mean_throughput_bps,ci95_bps\n", 0), 0u);
  EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 1 + 4 * 5);
}

TEST_F(Cli, ThroughputWithoutModelsFails) {
  const auto r = run({"throughput", "--set", "general.output=" + dir_.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("train"), std::string::npos);
}

TEST_F(Cli, OptimizeAlphaAndOperators) {
  ASSERT_EQ(run({"optimize-alpha", "--elements", "20,100", "--out", p("o.csv")}).code, 0);
  EXPECT_EQ(slurp(p("o.csv")).rfind("n_elements,alpha_star,secrecy_star\n", 0), 0u);

  std::vector<rics::cplx> x(64);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = {std::cos(0.3 * i), std::sin(0.3 * i)};
  rics::write_signal(fs::path(p("in.bin")), rics::ComplexSignal(x, 1e6));
  ASSERT_EQ(run({"operators", "--in", p("in.bin"), "--op", "frequency_shift", "--shift", "1e5",
                 "--out", p("y1.bin")})
                .code,
            0);
  ASSERT_EQ(run({"operators", "--in", p("in.bin"), "--op", "frequency_shift", "--shift", "1e5",
                 "--out", p("y2.bin")})
                .code,
            0);
  EXPECT_EQ(slurp(p("y1.bin")), slurp(p("y2.bin")));
  EXPECT_EQ(rics::read_signal(fs::path(p("y1.bin"))).size(), 64u);
  ASSERT_EQ(run({"operators", "--in", p("in.bin"), "--op", "convolve", "--kernel", "0.5,0.5",
                 "--out", p("y3.bin")})
                .code,
            0);
  EXPECT_EQ(run({"operators", "--in", p("in.bin"), "--op", "hilbert"}).code, 1);
}

TEST_F(Cli, SynthWritesDataset) {
  ASSERT_EQ(run(small({"synth", "--out", p("ds")})).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "ds" / "train" / "manifest.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "ds" / "test" / "images.bin"));
  EXPECT_TRUE(fs::exists(dir_ / "ds" / "train" / "signal_00047.bin"));
}

}  // namespace
