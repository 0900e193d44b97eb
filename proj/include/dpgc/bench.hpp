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
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpgc/engine.hpp"
#include "dpgc/grid.hpp"

namespace dpgc {

enum class SyntheticKind { kSeg1Worst, kSeg2Random };

SyntheticKind parse_synthetic_kind(const std::string& s);

/// seg1_worst: every row rises from 0 at the left edge to 255 at the right
/// edge, I(r, c) = round(255 c / (w - 1)), shifted up to 3 levels per row by
/// the seed while staying monotone; the minimum cut is a vertical line that
/// any vertical stripe boundary must cross.
/// seg2_random: background level, 3 to 6 elliptic blobs of random
/// intensity, uniform noise of +-24, all drawn from the seed.
GridImage gen_synthetic(SyntheticKind kind, int width, int height, std::uint64_t seed);

enum class Problem { kSeg1, kSeg2, kRaw };
Problem parse_problem(const std::string& s);
const char* to_string(Problem p);

struct BenchConfig {
  /// Image (.pgm), DIMACS file, or "synth:<kind>:<W>x<H>".
  std::string input;
  Problem problem = Problem::kSeg2;
  std::vector<Mode> modes = {Mode::kNaiveConverged};
  SolverConfig solver;
  std::uint64_t seed = 1;
  /// Synthetic inputs only: seeds seed .. seed + instances - 1.
  int instances = 1;
  int repetitions = 3;
  double edge_scale = 8.0;
  double unary_scale = 16.0;
  double pairwise_scale = 4.0;
  StripeOrientation orientation = StripeOrientation::kVertical;
};

struct BenchRow {
  std::string input;
  std::string problem;
  std::string mode;
  int n_subgraphs = 0;
  int iter_patience = 0;
  int merge_group_size = 0;
  int merge_period = 0;
  bool converged = false;
  int iterations = 0;
  int parallel_iterations = 0;
  int first_disagreement = 0;
  int merges = 0;
  Capacity cut_value;
  Capacity serial_cut_value;
  double t_serial = 0.0;
  double t_parallel = 0.0;
  double relative_time = 0.0;
  double relative_reused_flow = 0.0;
  std::int64_t modeled_bytes = 0;
  double modeled_seconds = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

/// A converged parallel run disagreed with the serial cut value.
class CutMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loads one instance (one seed for synthetic inputs). Grid problems also
/// return the image size, used for stripe regions.
struct Instance {
  std::string name;
  FlowGraph graph;
  int width = 0;
  int height = 0;
};
Instance load_instance(const BenchConfig& cfg, std::uint64_t seed);

/// Serial BK first, then every requested mode, best-of-repetitions wall time
/// for each. Throws CutMismatchError before returning if any converged mode
/// differs from the serial value.
BenchReport run_bench(const BenchConfig& cfg);

/// Fixed columns, see csv_header().
std::string csv_header();
/// mask_times replaces wall-clock columns with "*".
void write_csv(const BenchReport& report, std::ostream& os, bool mask_times = false);
/// gnuplot-ready "lo hi count" lines of relative_time per mode.
void write_histogram(const BenchReport& report, std::ostream& os, int bins = 10);

}  // namespace dpgc
