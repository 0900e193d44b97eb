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
#include "dpgc/flow_graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace dpgc {

FlowGraph::FlowGraph(int n_vertices, int log2_denominator)
    : log2_den_(log2_denominator),
      source_(static_cast<std::size_t>(n_vertices), 0),
      sink_(static_cast<std::size_t>(n_vertices), 0) {
  if (n_vertices < 0) throw std::invalid_argument("negative vertex count");
  if (log2_denominator < 0 || log2_denominator > Capacity::kMaxLog2Denominator) {
    throw std::out_of_range("log2_denominator out of range");
  }
}

void FlowGraph::check_vertex(int v) const {
  if (v < 0 || v >= num_vertices()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  }
}

std::uint64_t FlowGraph::pair_key(int i, int j) {
  const auto lo = static_cast<std::uint32_t>(std::min(i, j));
  const auto hi = static_cast<std::uint32_t>(std::max(i, j));
  return (std::uint64_t{lo} << 32) | hi;
}

std::int64_t FlowGraph::to_raw(const Capacity& c) {
  if (c.log2_denominator() > log2_den_) rescale_to(c.log2_denominator());
  return c.numerator_at(log2_den_);
}

void FlowGraph::set_source_cap(int v, Capacity c) {
  check_vertex(v);
  if (c.is_negative()) throw std::invalid_argument("negative t-link capacity");
  source_[v] = to_raw(c);
}

void FlowGraph::set_sink_cap(int v, Capacity c) {
  check_vertex(v);
  if (c.is_negative()) throw std::invalid_argument("negative t-link capacity");
  sink_[v] = to_raw(c);
}

void FlowGraph::add_tlinks(int v, Capacity to_source_link, Capacity to_sink_link) {
  check_vertex(v);
  if (to_source_link.is_negative() || to_sink_link.is_negative()) {
    throw std::invalid_argument("negative t-link capacity");
  }
  rescale_to(std::max({log2_den_, to_source_link.log2_denominator(), to_sink_link.log2_denominator()}));
  const std::int64_t s = to_raw(to_source_link);
  const std::int64_t t = to_raw(to_sink_link);
  source_[v] = detail::add_checked(source_[v], s);
  sink_[v] = detail::add_checked(sink_[v], t);
}

int FlowGraph::add_edge(int i, int j, Capacity cap_ij, Capacity cap_ji) {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw std::invalid_argument("self loop");
  if (cap_ij.is_negative() || cap_ji.is_negative()) throw std::invalid_argument("negative arc capacity");
  rescale_to(std::max({log2_den_, cap_ij.log2_denominator(), cap_ji.log2_denominator()}));
  std::int64_t fwd = to_raw(cap_ij);
  std::int64_t bwd = to_raw(cap_ji);
  if (i > j) std::swap(fwd, bwd);
  const auto key = pair_key(i, j);
  auto [it, inserted] = arc_index_.try_emplace(key, num_arcs());
  if (inserted) {
    Arc a;
    a.tail = std::min(i, j);
    a.head = std::max(i, j);
    a.cap[0] = fwd;
    a.cap[1] = bwd;
    arcs_.push_back(a);
  } else {
    Arc& a = arcs_[it->second];
    a.cap[0] = detail::add_checked(a.cap[0], fwd);
    a.cap[1] = detail::add_checked(a.cap[1], bwd);
  }
  return it->second;
}

std::optional<int> FlowGraph::find_arc(int i, int j) const {
  auto it = arc_index_.find(pair_key(i, j));
  if (it == arc_index_.end()) return std::nullopt;
  return it->second;
}

Capacity FlowGraph::arc_cap(int i, int j) const {
  auto idx = find_arc(i, j);
  if (!idx) return {};
  const Arc& a = arcs_[*idx];
  return value(i < j ? a.cap[0] : a.cap[1]);
}

void FlowGraph::add_accumulated_flow(Capacity c) { acc_ = detail::add_checked(acc_, to_raw(c)); }

Capacity FlowGraph::total_capacity() const {
  std::int64_t sum = acc_ < 0 ? -acc_ : acc_;
  for (std::size_t v = 0; v < source_.size(); ++v) {
    sum = detail::add_checked(sum, source_[v]);
    sum = detail::add_checked(sum, sink_[v]);
  }
  for (const Arc& a : arcs_) {
    sum = detail::add_checked(sum, a.cap[0]);
    sum = detail::add_checked(sum, a.cap[1]);
  }
  return value(sum);
}

void FlowGraph::rescale_to(int log2_denominator) {
  if (log2_denominator < log2_den_) throw std::invalid_argument("rescale_to cannot coarsen");
  if (log2_denominator > Capacity::kMaxLog2Denominator) throw std::overflow_error("denominator too fine");
  const int bits = log2_denominator - log2_den_;
  if (bits == 0) return;
  for (auto& x : source_) x = detail::shl_checked(x, bits);
  for (auto& x : sink_) x = detail::shl_checked(x, bits);
  for (Arc& a : arcs_) {
    a.cap[0] = detail::shl_checked(a.cap[0], bits);
    a.cap[1] = detail::shl_checked(a.cap[1], bits);
  }
  acc_ = detail::shl_checked(acc_, bits);
  log2_den_ = log2_denominator;
}

void FlowGraph::normalize() {
  std::uint64_t bits = static_cast<std::uint64_t>(acc_);
  for (auto x : source_) bits |= static_cast<std::uint64_t>(x);
  for (auto x : sink_) bits |= static_cast<std::uint64_t>(x);
  for (const Arc& a : arcs_) bits |= static_cast<std::uint64_t>(a.cap[0]) | static_cast<std::uint64_t>(a.cap[1]);
  int drop = 0;
  if (bits == 0) {
    drop = log2_den_;
  } else {
    while (drop < log2_den_ && ((bits >> drop) & 1) == 0) ++drop;
  }
  if (drop == 0) return;
  for (auto& x : source_) x >>= drop;
  for (auto& x : sink_) x >>= drop;
  for (Arc& a : arcs_) {
    a.cap[0] >>= drop;
    a.cap[1] >>= drop;
  }
  acc_ >>= drop;  // exact: low bits are zero (arithmetic shift for negatives)
  log2_den_ -= drop;
}

bool operator==(const FlowGraph& a, const FlowGraph& b) {
  if (a.num_vertices() != b.num_vertices()) return false;
  if (a.accumulated_flow() != b.accumulated_flow()) return false;
  for (int v = 0; v < a.num_vertices(); ++v) {
    if (a.source_cap(v) != b.source_cap(v) || a.sink_cap(v) != b.sink_cap(v)) return false;
  }
  auto live = [](const Arc& arc) { return arc.cap[0] != 0 || arc.cap[1] != 0; };
  if (std::count_if(a.arcs_.begin(), a.arcs_.end(), live) != std::count_if(b.arcs_.begin(), b.arcs_.end(), live)) {
    return false;
  }
  for (const Arc& arc : a.arcs_) {
    if (!live(arc)) continue;
    auto idx = b.find_arc(arc.tail, arc.head);
    if (!idx) return false;
    if (a.value(arc.cap[0]) != b.arc_forward(*idx) || a.value(arc.cap[1]) != b.arc_backward(*idx)) return false;
  }
  return true;
}

Capacity cut_cost(const FlowGraph& g, const Assignment& x) {
  if (static_cast<int>(x.size()) != g.num_vertices()) throw std::invalid_argument("assignment length mismatch");
  std::int64_t c = g.raw_accumulated_flow();
  const auto src = g.raw_source();
  const auto snk = g.raw_sink();
  for (int v = 0; v < g.num_vertices(); ++v) c = detail::add_checked(c, x[v] ? src[v] : snk[v]);
  for (const Arc& a : g.raw_arcs()) {
    if (!x[a.tail] && x[a.head]) c = detail::add_checked(c, a.cap[0]);
    if (x[a.tail] && !x[a.head]) c = detail::add_checked(c, a.cap[1]);
  }
  return g.value(c);
}

}  // namespace dpgc
