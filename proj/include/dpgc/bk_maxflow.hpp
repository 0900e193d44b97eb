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
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "dpgc/capacity.hpp"
#include "dpgc/flow_graph.hpp"

namespace dpgc {

/// Signed change to one vertex's terminal links.
struct TlinkDelta {
  int vertex = 0;
  Capacity d_source;
  Capacity d_sink;
};

struct SolveResult {
  /// Flow pushed by this call (equals the growth of accumulated_flow).
  Capacity flow;
  /// x[i] = 1 iff i can still reach the sink in the residual graph.
  /// Vertices connected to neither terminal get 0.
  Assignment assignment;
};

/// Boykov-Kolmogorov augmenting-path maxflow with search-tree reuse.
///
/// The solver holds only search-tree state; capacities live in the FlowGraph
/// passed to each call, which is turned into its residual in place. The same
/// graph must be passed every time until reset(). Active and orphan queues
/// are FIFO and initial activation is by ascending vertex id, so results are
/// deterministic.
class BkSolver {
 public:
  /// Called after every push with the graph and the amount pushed.
  using PushObserver = std::function<void(const FlowGraph&, const Capacity&)>;

  SolveResult solve(FlowGraph& g);

  /// Changes t-links by the given signed amounts. A link that would go
  /// negative shifts both links of that vertex up by the deficit (constant
  /// drops by the same amount); then the common part m = min(source, sink) is
  /// cancelled into accumulated_flow. The cut function changes by exactly
  /// d_source * x + d_sink * ~x. Search trees are repaired so the next
  /// solve() continues from the previous state.
  void apply_tlink_deltas(FlowGraph& g, std::span<const TlinkDelta> deltas);

  /// Drops all search-tree state; the next solve() starts cold.
  void reset();
  bool initialized() const { return initialized_; }

  void set_push_observer(PushObserver obs) { observer_ = std::move(obs); }

 private:
  static constexpr int kNone = -1;
  static constexpr int kTerminal = -2;
  static constexpr int kOrphan = -3;

  void bind(FlowGraph& g);
  void init_trees();
  void set_active(int v);
  int next_active();
  void set_orphan(int v);
  std::int64_t augment(int middle);
  void process_orphan(int v);
  void drain_orphans();
  Assignment extract_cut() const;

  std::int64_t& rcap(int h) { return arcs_[h >> 1].cap[h & 1]; }
  std::int64_t rcap(int h) const { return arcs_[h >> 1].cap[h & 1]; }

  bool initialized_ = false;
  int n_ = 0;
  int m_ = 0;

  // Bound for the duration of one public call.
  FlowGraph* graph_ = nullptr;
  std::span<Arc> arcs_;
  std::span<std::int64_t> src_;
  std::span<std::int64_t> snk_;

  // Adjacency in CSR form over half-arcs h = 2 * arc + dir.
  std::vector<int> first_;
  std::vector<int> out_;
  std::vector<int> to_;

  std::vector<int> parent_;  // half-arc toward the parent, or kNone/kTerminal/kOrphan
  std::vector<std::uint8_t> in_sink_tree_;
  std::vector<std::int64_t> ts_;
  std::vector<int> dist_;
  std::vector<std::uint8_t> queued_;
  std::deque<int> active_;
  std::deque<int> orphans_;
  std::int64_t time_ = 0;

  PushObserver observer_;
};

/// Cold-start maxflow on g (g becomes its residual).
SolveResult maxflow(FlowGraph& g);

}  // namespace dpgc
