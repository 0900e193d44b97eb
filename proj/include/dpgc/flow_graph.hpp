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
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dpgc/capacity.hpp"

namespace dpgc {

/// Binary label per non-terminal vertex: 0 = source side (S), 1 = sink side (T).
using Assignment = std::vector<std::uint8_t>;

/// One record per unordered vertex pair. `tail < head`; cap[0] is the
/// residual capacity tail->head and cap[1] the one head->tail, both stored as
/// numerators over the owning graph's shared denominator.
struct Arc {
  std::int32_t tail = 0;
  std::int32_t head = 0;
  std::int64_t cap[2] = {0, 0};
};

/// Directed s-t network over vertices 0..n-1 (terminals implicit).
///
/// All capacities share one power-of-two denominator. Setting a value that
/// needs a finer denominator rescales the whole graph. Stored capacities are
/// never negative. `accumulated_flow` is the constant carried alongside the
/// cut function; solver pushes only ever increase it.
class FlowGraph {
 public:
  FlowGraph() = default;
  explicit FlowGraph(int n_vertices, int log2_denominator = 0);

  int num_vertices() const { return static_cast<int>(source_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  int log2_denominator() const { return log2_den_; }

  Capacity source_cap(int v) const { return value(source_.at(v)); }
  Capacity sink_cap(int v) const { return value(sink_.at(v)); }
  void set_source_cap(int v, Capacity c);
  void set_sink_cap(int v, Capacity c);
  void add_tlinks(int v, Capacity to_source_link, Capacity to_sink_link);

  /// Adds capacity in both directions of the pair (i, j); antiparallel
  /// requests fold into the same record. Returns the record index.
  int add_edge(int i, int j, Capacity cap_ij, Capacity cap_ji = Capacity{});

  std::optional<int> find_arc(int i, int j) const;
  /// Directed capacity i->j (zero when no record exists).
  Capacity arc_cap(int i, int j) const;
  const Arc& arc(int index) const { return arcs_.at(index); }
  Capacity arc_forward(int index) const { return value(arcs_.at(index).cap[0]); }
  Capacity arc_backward(int index) const { return value(arcs_.at(index).cap[1]); }

  Capacity accumulated_flow() const { return value(acc_); }
  void add_accumulated_flow(Capacity c);

  /// Sum of every stored capacity plus |accumulated_flow|.
  Capacity total_capacity() const;

  /// Moves to a finer denominator (never coarser).
  void rescale_to(int log2_denominator);
  /// Drops common factors of two from all numerators.
  void normalize();

  /// Raw numerator access for solvers; values are over 2^log2_denominator().
  std::span<std::int64_t> raw_source() { return source_; }
  std::span<std::int64_t> raw_sink() { return sink_; }
  std::span<Arc> raw_arcs() { return arcs_; }
  std::span<const std::int64_t> raw_source() const { return source_; }
  std::span<const std::int64_t> raw_sink() const { return sink_; }
  std::span<const Arc> raw_arcs() const { return arcs_; }
  std::int64_t& raw_accumulated_flow() { return acc_; }
  std::int64_t raw_accumulated_flow() const { return acc_; }

  Capacity value(std::int64_t raw) const { return Capacity::fixed(raw, log2_den_); }
  /// Numerator of `c` at this graph's denominator, rescaling the graph first if needed.
  std::int64_t to_raw(const Capacity& c);

  /// Equality of all capacities and the constant; arc-record order and
  /// all-zero records are ignored.
  friend bool operator==(const FlowGraph& a, const FlowGraph& b);

 private:
  static std::uint64_t pair_key(int i, int j);
  void check_vertex(int v) const;

  int log2_den_ = 0;
  std::vector<std::int64_t> source_;
  std::vector<std::int64_t> sink_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::uint64_t, int> arc_index_;
  std::int64_t acc_ = 0;
};

/// Cost of the cut x (x[v] = 1 puts v on the sink side) plus the constant.
Capacity cut_cost(const FlowGraph& g, const Assignment& x);

}  // namespace dpgc
