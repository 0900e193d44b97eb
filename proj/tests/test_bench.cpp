/*
Copyright 2026 The dpgc Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dpgc/bench.hpp"

using namespace dpgc;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string csv(const BenchReport& r) {
  std::ostringstream s;
  write_csv(r, s, true);
  return s.str();
}

}  // namespace

TEST_CASE("synthetic images are a function of the seed") {
  for (auto kind : {SyntheticKind::kSeg1Worst, SyntheticKind::kSeg2Random}) {
    const GridImage a = gen_synthetic(kind, 24, 16, 5);
    const GridImage b = gen_synthetic(kind, 24, 16, 5);
    const GridImage c = gen_synthetic(kind, 24, 16, 6);
    CHECK(a == b);
    CHECK_FALSE(a == c);
  }
}

TEST_CASE("seg1_worst rows rise monotonically from 0 to 255") {
  const GridImage img = gen_synthetic(SyntheticKind::kSeg1Worst, 32, 8, 3);
  for (int r = 0; r < img.height(); ++r) {
    CHECK(img.at(r, 0) == 0);
    CHECK(img.at(r, img.width() - 1) == 255);
    for (int c = 1; c < img.width(); ++c) CHECK(img.at(r, c) >= img.at(r, c - 1));
  }
}

TEST_CASE("synthetic input strings are parsed and validated") {
  BenchConfig cfg;
  cfg.input = "synth:seg2_random:12x7";
  const Instance inst = load_instance(cfg, 9);
  CHECK(inst.width == 12);
  CHECK(inst.height == 7);
  CHECK(inst.graph.num_vertices() == 84);
  CHECK(inst.name == "synth:seg2_random:12x7@9");
  cfg.input = "synth:seg2_random";
  CHECK_THROWS_AS(load_instance(cfg, 1), std::invalid_argument);
  cfg.input = "synth:nope:4x4";
  CHECK_THROWS_AS(load_instance(cfg, 1), std::invalid_argument);
  cfg.input = "synth:seg2_random:4x4";
  cfg.problem = Problem::kRaw;
  CHECK_THROWS_AS(load_instance(cfg, 1), std::invalid_argument);
}

TEST_CASE("golden report: seg2_random 32x32, three seeds, simulated transport") {
  BenchConfig cfg;
  cfg.input = "synth:seg2_random:32x32";
  cfg.seed = 3;
  cfg.instances = 3;
  cfg.repetitions = 1;
  cfg.modes = {Mode::kBaselinePbk, Mode::kNaiveConverged, Mode::kDynamic};
  cfg.solver.n_subgraphs = 2;
  cfg.solver.transport.kind = TransportConfig::Kind::kSimulated;
  cfg.solver.transport.machines = 2;
  CHECK(csv(run_bench(cfg)) == read_file(DPGC_GOLDEN_DIR "/bench_seg2_32x32.csv"));
}

TEST_CASE("golden report: seg1_worst 16x16 with four stripes") {
  BenchConfig cfg;
  cfg.input = "synth:seg1_worst:16x16";
  cfg.problem = Problem::kSeg1;
  cfg.repetitions = 1;
  cfg.modes = {Mode::kNaiveConverged, Mode::kDynamic};
  cfg.solver.n_subgraphs = 4;
  cfg.solver.max_iterations = 200;
  CHECK(csv(run_bench(cfg)) == read_file(DPGC_GOLDEN_DIR "/bench_seg1_16x16.csv"));
}

TEST_CASE("report rows agree with the serial cut value") {
  BenchConfig cfg;
  cfg.input = "synth:seg2_random:24x24";
  cfg.instances = 4;
  cfg.repetitions = 1;
  cfg.modes = {Mode::kSerial, Mode::kNaiveConverged};
  cfg.solver.n_subgraphs = 3;
  const BenchReport r = run_bench(cfg);
  REQUIRE(r.rows.size() == 8);
  for (const BenchRow& row : r.rows) {
    CHECK(row.converged);
    CHECK(row.cut_value == row.serial_cut_value);
  }
  CHECK(r.rows[0].n_subgraphs == 1);
}

TEST_CASE("histogram counts every row once") {
  BenchReport r;
  for (double t : {0.1, 0.5, 0.9, 1.0}) {
    BenchRow row;
    row.mode = "naive_converged";
    row.relative_time = t;
    r.rows.push_back(row);
  }
  std::ostringstream s;
  write_histogram(r, s, 4);
  int total = 0;
  std::istringstream in(s.str());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double lo, hi;
    int count;
    std::istringstream(line) >> lo >> hi >> count;
    total += count;
  }
  CHECK(total == 4);
  CHECK_THROWS_AS(write_histogram(r, s, 0), std::invalid_argument);
}
