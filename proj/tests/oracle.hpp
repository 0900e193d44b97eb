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
// Test-only reference computations. Nothing here calls into pseudo_boolean
// or the solver; cut costs are summed straight from the edges.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dpgc/flow_graph.hpp"

namespace oracle {

using dpgc::Assignment;
using dpgc::Capacity;
using dpgc::FlowGraph;

/// Cost of the s-t cut described by x (0 = S side, 1 = T side), plus the
/// graph's constant.
inline Capacity cut_cost(const FlowGraph& g, const Assignment& x) {
  Capacity c = g.accumulated_flow();
  for (int v = 0; v < g.num_vertices(); ++v) c += x[v] ? g.source_cap(v) : g.sink_cap(v);
  for (int a = 0; a < g.num_arcs(); ++a) {
    const auto& arc = g.arc(a);
    if (!x[arc.tail] && x[arc.head]) c += g.arc_forward(a);
    if (x[arc.tail] && !x[arc.head]) c += g.arc_backward(a);
  }
  return c;
}

inline Assignment decode(std::uint32_t code, int n) {
  Assignment x(n);
  for (int i = 0; i < n; ++i) x[i] = (code >> i) & 1U;
  return x;
}

/// Minimum cut cost by plain enumeration of all 2^n labelings.
inline Capacity min_cut_cost(const FlowGraph& g) {
  const int n = g.num_vertices();
  Capacity best = oracle::cut_cost(g, decode(0, n));
  for (std::uint32_t code = 1; code < (1U << n); ++code) {
    const Capacity c = oracle::cut_cost(g, decode(code, n));
    if (c < best) best = c;
  }
  return best;
}

struct RandomGraphParams {
  int min_vertices = 1;
  int max_vertices = 10;
  int max_cap = 16;
  double tlink_density = 0.6;
  double arc_density = 0.4;
  int log2_denominator = 0;
};

/// Random graph with integer numerators in [0, max_cap] over 2^log2_denominator.
inline FlowGraph random_graph(std::mt19937_64& rng, const RandomGraphParams& p = {}) {
  std::uniform_int_distribution<int> nd(p.min_vertices, p.max_vertices);
  std::uniform_int_distribution<std::int64_t> cd(1, p.max_cap);
  std::bernoulli_distribution tl(p.tlink_density);
  std::bernoulli_distribution ad(p.arc_density);
  const int n = nd(rng);
  FlowGraph g(n, p.log2_denominator);
  auto cap = [&] { return Capacity::fixed(cd(rng), p.log2_denominator); };
  for (int v = 0; v < n; ++v) {
    if (tl(rng)) g.set_source_cap(v, cap());
    if (tl(rng)) g.set_sink_cap(v, cap());
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!ad(rng)) continue;
      const Capacity fwd = tl(rng) ? cap() : Capacity{};
      const Capacity bwd = tl(rng) ? cap() : Capacity{};
      if (fwd.is_zero() && bwd.is_zero()) continue;
      g.add_edge(i, j, fwd, bwd);
    }
  return g;
}

/// Random graph whose arcs only join vertices whose ids differ by at most
/// `band`, so contiguous id ranges overlapping by `band` are separable.
inline FlowGraph random_banded_graph(std::mt19937_64& rng, int n, int band, const RandomGraphParams& p = {}) {
  std::uniform_int_distribution<std::int64_t> cd(1, p.max_cap);
  std::bernoulli_distribution tl(p.tlink_density);
  std::bernoulli_distribution ad(p.arc_density);
  FlowGraph g(n, p.log2_denominator);
  auto cap = [&] { return Capacity::fixed(cd(rng), p.log2_denominator); };
  for (int v = 0; v < n; ++v) {
    if (tl(rng)) g.set_source_cap(v, cap());
    if (tl(rng)) g.set_sink_cap(v, cap());
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n && j <= i + band; ++j) {
      if (!ad(rng)) continue;
      g.add_edge(i, j, tl(rng) ? cap() : Capacity{}, tl(rng) ? cap() : Capacity{});
    }
  return g;
}

/// The two-vertex graph from the worked example: sink links 6 and 2, source
/// link 4 on the second vertex, arcs 1 -> 2 of 1 and 2 -> 1 of 2.
inline FlowGraph worked_example_g0() {
  FlowGraph g(2);
  g.set_sink_cap(0, 6);
  g.set_source_cap(1, 4);
  g.set_sink_cap(1, 2);
  g.add_edge(0, 1, 1, 2);
  return g;
}

}  // namespace oracle
