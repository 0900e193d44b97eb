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

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dpgc/bk_maxflow.hpp"
#include "dpgc/capacity.hpp"
#include "dpgc/flow_graph.hpp"
#include "dpgc/partition.hpp"
#include "dpgc/transport.hpp"

namespace dpgc {

enum class Mode { kSerial, kBaselinePbk, kNaiveConverged, kDynamic };

const char* to_string(Mode m);
/// Accepts serial, baseline_pbk, naive_converged, dynamic.
Mode parse_mode(const std::string& s);

/// kSerial runs subgraph solves one after another on the calling thread and
/// is the reference path; kOpenMP runs them in an OpenMP parallel loop.
/// Both produce identical results.
enum class ExecutionPolicy { kSerial, kOpenMP };

/// Disagreeing overlap vertex after one round of subgraph solves.
struct Disagreement {
  int overlap = 0;  // between parts overlap and overlap + 1
  int index = 0;    // position inside Overlap::global
  int vertex = 0;   // global id
  int left_label = 0;
  int right_label = 0;
};

/// Overlap vertices whose labels differ between the two parts holding them.
std::vector<Disagreement> disagreement(const Partition& p, std::span<const Assignment> local);

/// Dual variable, step size and last update sign of one overlap vertex.
struct DualEntry {
  Capacity lambda;
  Capacity step;
  int last_sign = 0;
  friend bool operator==(const DualEntry&, const DualEntry&) = default;
};

class DualState {
 public:
  DualState() = default;
  /// step_min is the smallest step; steps never exceed step_max.
  DualState(Capacity step_init, Capacity step_min, Capacity step_max);

  /// One supergradient step on every disagreeing vertex. With labels x1 (left
  /// part) and x2 (right part), dlambda = step * (x1 - x2); the left part's
  /// linear coefficient of x_i grows by dlambda and the right part's shrinks
  /// by it. Step: doubled when the sign repeats, halved when it flips.
  /// Returns the t-link deltas per part (indexed like the partition).
  std::vector<std::vector<TlinkDelta>> update(const Partition& p, std::span<const Disagreement> diffs);

  /// Drops entries of vertices that are no longer shared, and those listed.
  void prune(const Partition& p, std::span<const int> reset_vertices = {});

  const DualEntry* find(int vertex) const;
  const std::map<int, DualEntry>& entries() const { return entries_; }

 private:
  Capacity step_init_ = Capacity(1);
  Capacity step_min_ = Capacity(1);
  Capacity step_max_ = Capacity(1);
  std::map<int, DualEntry> entries_;  // keyed by global vertex
};

struct IterationStats {
  int iteration = 0;
  int parts = 0;
  int n_diff = 0;
  int overlap_vertices = 0;
  /// Flow pushed by each part's solve in this iteration.
  std::vector<Capacity> part_flows;
  /// Sum of part constants right after the solves: the dual bound g(lambda).
  Capacity dual_bound;
  /// Sum of part constants after the dual update and any merge.
  Capacity accumulated_after;
  /// Member part indices (before merging) of each merge performed.
  std::vector<std::vector<int>> merges;
  int splits = 0;
  double seconds = 0.0;  // not compared

  friend bool operator==(const IterationStats& a, const IterationStats& b);
};

/// Read-only state handed to the strategy hooks.
struct EngineView {
  const Partition& partition;
  const std::vector<IterationStats>& history;
  int iteration = 0;             // iterations completed
  int n_diff = 0;                // latest disagreement count
  int best_n_diff = 0;           // smallest count so far
  int stalled = 0;               // consecutive iterations with n_diff >= best
  int since_topology_change = 0; // iterations since the last split or merge
};

struct SplitRequest {
  int part = 0;
  /// Band-based refinement into this many pieces when `regions` is empty.
  int pieces = 2;
  std::vector<std::vector<int>> regions;
};

/// Strategy of the dynamic loop. Every outer round: should_split, then
/// repeated rounds (solve, dual update, count) until nothing disagrees or
/// inner_stop, then should_merge. Missing hooks mean "never".
struct DynamicHooks {
  std::function<std::vector<SplitRequest>(const EngineView&)> should_split;
  std::function<bool(const EngineView&)> inner_stop;
  std::function<std::vector<std::vector<int>>(const EngineView&)> should_merge;
};

/// Merge every two neighbouring parts after `iter_patience` rounds without a
/// new minimum disagreement count.
DynamicHooks stall_merge_hooks(int iter_patience);
/// Merge every `group_size` neighbouring parts every `period` rounds.
DynamicHooks schedule_hooks(int period, int group_size);

struct SolverConfig {
  Mode mode = Mode::kNaiveConverged;
  int n_subgraphs = 2;
  int iter_patience = 20;      // ITER
  int merge_group_size = 2;    // l
  int merge_period = 1;        // K
  int max_iterations = 1000;
  Capacity step_init = Capacity(1);
  ExecutionPolicy policy = ExecutionPolicy::kOpenMP;
  int workers = 0;  // 0: OpenMP default
  /// Default: breadth-first level stripes.
  std::optional<RegionSpec> regions;
  TransportConfig transport;
  /// Dynamic mode only; default is schedule_hooks(merge_period, merge_group_size).
  std::optional<DynamicHooks> hooks;
  std::function<void(const IterationStats&)> on_iteration;
};

/// Throws std::invalid_argument on out-of-range fields.
void validate(const SolverConfig& cfg);

struct CutResult {
  Assignment assignment;
  Capacity cut_value;   // f(assignment) on the input graph
  Capacity dual_bound;  // last sum of subgraph minima
  bool converged = false;
  int iterations = 0;
  /// Rounds run with two or more parts.
  int parallel_iterations = 0;
  /// Disagreement count after the first round (M).
  int first_disagreement = 0;
  int merges = 0;
  int splits = 0;
  int final_parts = 0;
  std::vector<IterationStats> stats;
  /// Sum of part constants at the last merge, minus the input constant, over
  /// the maxflow of the input. 1 when nothing was merged and the run converged.
  /// Negative when link deficits from dual updates outweigh the pushed flow.
  double relative_reused_flow = 0.0;
  TransportStats transport;
  double wall_seconds = 0.0;  // not compared

  friend bool operator==(const CutResult& a, const CutResult& b);
};

CutResult solve_serial(const FlowGraph& g, const SolverConfig& cfg);
CutResult solve_baseline_pbk(const FlowGraph& g, const SolverConfig& cfg);
CutResult solve_naive_converged(const FlowGraph& g, const SolverConfig& cfg);
CutResult solve_dynamic(const FlowGraph& g, const SolverConfig& cfg, const DynamicHooks& hooks);
/// Dispatches on cfg.mode.
CutResult run(const SolverConfig& cfg, const FlowGraph& g);

/// Stable-order CSV record of one iteration.
void write_stats_header(std::ostream& os);
void write_stats_row(std::ostream& os, const IterationStats& s);

/// Flow reuse of one forced merge: `rounds` rounds of parallel BK with dual
/// updates, then all parts are merged and the merged residual is solved cold.
struct FlowReuse {
  double relative_reused_flow = 0.0;
  Capacity reused;       // sum of part constants minus the input constant
  Capacity maxflow;      // cold maxflow of the input
  Capacity merged_flow;  // maxflow of the merged residual
  double merged_seconds = 0.0;    // best of repetitions
  double original_seconds = 0.0;  // best of repetitions
  int rounds_run = 0;
};

FlowReuse measure_flow_reuse(const FlowGraph& g, const RegionSpec& regions, int rounds, int repetitions = 3,
                             Capacity step_init = Capacity(1));

}  // namespace dpgc
