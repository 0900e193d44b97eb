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
// dpgc: benchmark harness, synthetic image generator and DIMACS exporter.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error, 3 cut value mismatch.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "dpgc/bench.hpp"
#include "dpgc/dimacs.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitMismatch = 3;

struct Options {
  std::string input;
  std::string problem = "seg2";
  std::vector<std::string> modes = {"naive_converged"};
  int subgraphs = 2;
  int workers = 0;
  bool serial_policy = false;
  int iter = 20;
  int merge_size = 2;
  int merge_period = 1;
  int max_iter = 1000;
  std::uint64_t seed = 1;
  int instances = 1;
  int repetitions = 3;
  std::string transport = "in_process";
  int machines = 4;
  double latency = 50e-6;
  double bandwidth = 1.25e9;
  std::string orientation = "vertical";
  double edge_scale = 8.0;
  double unary = 16.0;
  double pairwise = 4.0;
  std::string out;
  std::string hist;
  std::string stats;
  bool mask_times = false;
};

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "PGM image, DIMACS file, or synth:<kind>:<W>x<H>")->required();
  cmd->add_option("--problem", o.problem, "seg1 | seg2 | raw")
      ->check(CLI::IsMember({"seg1", "seg2", "raw"}))
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Seed for synthetic inputs")->capture_default_str();
  cmd->add_option("--edge-scale", o.edge_scale, "seg1 n-link scale")->capture_default_str();
  cmd->add_option("--unary", o.unary, "seg2 t-link scale")->capture_default_str();
  cmd->add_option("--pairwise", o.pairwise, "seg2 n-link scale")->capture_default_str();
}

dpgc::BenchConfig to_bench_config(const Options& o) {
  dpgc::BenchConfig cfg;
  cfg.input = o.input;
  cfg.problem = dpgc::parse_problem(o.problem);
  cfg.modes.clear();
  for (const auto& m : o.modes) cfg.modes.push_back(dpgc::parse_mode(m));
  cfg.seed = o.seed;
  cfg.instances = o.instances;
  cfg.repetitions = o.repetitions;
  cfg.edge_scale = o.edge_scale;
  cfg.unary_scale = o.unary;
  cfg.pairwise_scale = o.pairwise;
  cfg.orientation =
      o.orientation == "horizontal" ? dpgc::StripeOrientation::kHorizontal : dpgc::StripeOrientation::kVertical;
  auto& s = cfg.solver;
  s.n_subgraphs = o.subgraphs;
  s.iter_patience = o.iter;
  s.merge_group_size = o.merge_size;
  s.merge_period = o.merge_period;
  s.max_iterations = o.max_iter;
  s.workers = o.workers;
  s.policy = o.serial_policy ? dpgc::ExecutionPolicy::kSerial : dpgc::ExecutionPolicy::kOpenMP;
  if (o.transport == "simulated") {
    s.transport.kind = dpgc::TransportConfig::Kind::kSimulated;
    s.transport.machines = o.machines;
    s.transport.latency_seconds = o.latency;
    s.transport.bytes_per_second = o.bandwidth;
  }
  return cfg;
}

int run_bench_command(const Options& o) {
  dpgc::BenchConfig cfg = to_bench_config(o);
  std::unique_ptr<std::ofstream> stats_file;
  if (!o.stats.empty()) {
    stats_file = std::make_unique<std::ofstream>(o.stats);
    if (!*stats_file) throw std::runtime_error("cannot write " + o.stats);
    dpgc::write_stats_header(*stats_file);
    cfg.solver.on_iteration = [&](const dpgc::IterationStats& s) { dpgc::write_stats_row(*stats_file, s); };
  }
  dpgc::BenchReport report;
  try {
    report = dpgc::run_bench(cfg);
  } catch (const dpgc::CutMismatchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  if (o.out.empty()) {
    dpgc::write_csv(report, std::cout, o.mask_times);
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    dpgc::write_csv(report, f, o.mask_times);
  }
  if (!o.hist.empty()) {
    std::ofstream f(o.hist);
    if (!f) throw std::runtime_error("cannot write " + o.hist);
    dpgc::write_histogram(report, f);
  }
  return 0;
}

int run_gen_command(const std::string& kind, int w, int h, std::uint64_t seed, const std::string& out) {
  const dpgc::GridImage img = dpgc::gen_synthetic(dpgc::parse_synthetic_kind(kind), w, h, seed);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  dpgc::write_pgm(img, f);
  return 0;
}

int run_export_command(const Options& o) {
  dpgc::BenchConfig cfg = to_bench_config(o);
  const dpgc::Instance inst = dpgc::load_instance(cfg, o.seed);
  if (o.out.empty()) {
    dpgc::write_dimacs(inst.graph, std::cout);
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    dpgc::write_dimacs(inst.graph, f);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel and distributed graph cuts by dual decomposition"};
  app.require_subcommand(1);

  Options o;
  auto* bench = app.add_subcommand("bench", "Run serial BK and the requested modes, print a CSV report");
  bench->set_config("--config", "", "Key-value configuration file");
  add_input_options(bench, o);
  bench->add_option("--mode", o.modes, "serial | baseline_pbk | naive_converged | dynamic (repeatable)")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--threads", o.subgraphs, "Number of subgraphs N")->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--workers", o.workers, "OpenMP threads (0: runtime default)")->capture_default_str();
  bench->add_flag("--serial-policy", o.serial_policy, "Solve subgraphs one after another (reference path)");
  bench->add_option("--iter", o.iter, "ITER: stalled rounds before a pairwise merge")->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--merge-size", o.merge_size, "Parts per merge group (dynamic)")->capture_default_str();
  bench->add_option("--merge-period", o.merge_period, "Rounds between merges (dynamic)")->capture_default_str();
  bench->add_option("--max-iter", o.max_iter, "Iteration cap")->capture_default_str();
  bench->add_option("--instances", o.instances, "Synthetic inputs: number of seeds")->capture_default_str();
  bench->add_option("--repetitions", o.repetitions, "Best-of-R timing")->capture_default_str();
  bench->add_option("--transport", o.transport, "in_process | simulated")
      ->check(CLI::IsMember({"in_process", "simulated"}))
      ->capture_default_str();
  bench->add_option("--machines", o.machines, "Simulated machines")->capture_default_str();
  bench->add_option("--latency", o.latency, "Simulated per-message latency (s)")->capture_default_str();
  bench->add_option("--bandwidth", o.bandwidth, "Simulated bandwidth (bytes/s)")->capture_default_str();
  bench->add_option("--orientation", o.orientation, "Image stripes: vertical | horizontal")
      ->check(CLI::IsMember({"vertical", "horizontal"}))
      ->capture_default_str();
  bench->add_option("--out", o.out, "CSV output path (default stdout)");
  bench->add_option("--hist", o.hist, "Relative-time histogram output path");
  bench->add_option("--stats", o.stats, "Per-iteration stats CSV path");
  bench->add_flag("--mask-times", o.mask_times, "Print * for wall-clock columns");

  std::string gen_kind = "seg2_random";
  int gen_w = 64, gen_h = 64;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a synthetic PGM image");
  gen->add_option("--kind", gen_kind, "seg1_worst | seg2_random")
      ->check(CLI::IsMember({"seg1_worst", "seg2_random"}))
      ->capture_default_str();
  gen->add_option("--width", gen_w)->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--height", gen_h)->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--out", gen_out, "Output .pgm")->required();

  auto* exp = app.add_subcommand("export", "Build a graph and write it as DIMACS max-flow");
  add_input_options(exp, o);
  exp->add_option("--out", o.out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench) return run_bench_command(o);
    if (*gen) return run_gen_command(gen_kind, gen_w, gen_h, gen_seed, gen_out);
    if (*exp) return run_export_command(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
