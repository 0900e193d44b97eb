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

#include <span>
#include <stdexcept>
#include <vector>

#include "dpgc/bk_maxflow.hpp"
#include "dpgc/flow_graph.hpp"
#include "dpgc/pseudo_boolean.hpp"

namespace dpgc {

/// An arc with positive capacity whose endpoints share no region.
class SeparabilityError : public std::invalid_argument {
 public:
  SeparabilityError(int tail, int head);
  int tail() const { return tail_; }
  int head() const { return head_; }

 private:
  int tail_;
  int head_;
};

/// Invalid region layout, merge group, refinement or boundary shift.
class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inclusive range of bands (grid columns, rows, BFS levels, ...).
struct BandRange {
  int lo = -1;
  int hi = -1;
  friend bool operator==(const BandRange&, const BandRange&) = default;
};

/// Regions in chain order. Each vertex lies in one region or in two
/// consecutive ones. When band_of is set, every region is a band range and
/// consecutive ranges overlap by overlap_width bands.
struct RegionSpec {
  std::vector<std::vector<int>> regions;  // sorted global ids
  std::vector<int> band_of;               // per global vertex, optional
  std::vector<BandRange> bands;           // per region, when band_of is set
  int overlap_width = 1;
};

/// Ranges [c_k, c_{k+1} + w - 1] with c_k = lo + round(k (W - w) / pieces),
/// W = hi - lo + 1. Throws TopologyError when two cut points are closer than
/// the overlap width, which would put a band into three ranges.
std::vector<BandRange> chain_band_ranges(int lo, int hi, int pieces, int overlap_width);

RegionSpec chain_regions(std::vector<int> band_of, int n_bands, int n_parts, int overlap_width = 1);

enum class StripeOrientation { kVertical, kHorizontal };

/// Grid stripes (vertex id = r * width + c) with a one-line overlap.
RegionSpec stripe_regions(int width, int height, int n_parts,
                          StripeOrientation orientation = StripeOrientation::kVertical);

/// Stripes of breadth-first levels over the undirected arc structure.
/// Arcs only join equal or adjacent levels, so one-level overlaps are separable.
RegionSpec level_regions(const FlowGraph& g, int n_parts);

/// Contiguous id ranges overlapping by `overlap` ids.
RegionSpec id_range_regions(int n, int n_parts, int overlap);

struct Part {
  FlowGraph graph;
  std::vector<int> global_of_local;  // ascending
  BkSolver solver;
  BandRange bands;
  int machine = 0;

  int local_of(int global) const;  // -1 when absent
};

/// Shared vertices of parts k and k + 1.
struct Overlap {
  std::vector<int> global;
  std::vector<int> local_left;
  std::vector<int> local_right;
};

/// Overlapping subgraphs in chain order.
///
/// Shared t-links and arcs are split into exact halves. Merging sums the
/// member graphs, so the sum of all lifted subgraph polynomials is invariant
/// under every operation here.
class Partition {
 public:
  /// Throws SeparabilityError or TopologyError.
  static Partition split(const FlowGraph& g, const RegionSpec& spec);

  int num_vertices() const { return n_; }
  int num_parts() const { return static_cast<int>(parts_.size()); }
  Part& part(int k) { return parts_.at(k); }
  const Part& part(int k) const { return parts_.at(k); }
  /// Overlap between parts k and k + 1.
  const Overlap& overlap(int k) const { return overlaps_.at(k); }
  int num_overlap_vertices() const;
  int split_depth(int v) const { return depth_.at(v); }
  bool has_bands() const { return !band_of_.empty(); }
  const std::vector<int>& band_of() const { return band_of_; }
  int overlap_width() const { return overlap_width_; }

  /// Replaces parts first..last (inclusive, adjacent) by their sum. The merged
  /// part takes position `first` and the machine of part `first`.
  void merge(int first, int last);
  /// Same, for a group given as a set of indices.
  void merge(std::vector<int> group);

  /// Splits part k again along the given global-id regions, which must keep
  /// the chain valid. The part's constant goes to the first piece.
  void refine(int k, const std::vector<std::vector<int>>& sub_regions);
  /// Band-based refinement of part k into `pieces` stripes.
  void refine(int k, int pieces);

  /// Moves the boundary between parts k and k + 1 by `shift` bands: the pair
  /// is summed and re-split at the new boundary. Each part keeps its own
  /// constant. Returns the global ids whose ownership or sharing changed.
  std::vector<int> adjust_boundary(int k, int shift);

  MultilinearPolynomial total_polynomial() const;
  Capacity total_accumulated_flow() const;
  /// Global labels, taken from the lowest-indexed part holding each vertex.
  Assignment assemble(std::span<const Assignment> local) const;
  /// Smallest fixed-point unit at which all part capacities are exact.
  int finest_log2_denominator() const;

 private:
  void rebuild();
  std::vector<int> band_vertices(int lo, int hi) const;

  int n_ = 0;
  std::vector<Part> parts_;
  std::vector<Overlap> overlaps_;
  std::vector<int> depth_;
  std::vector<int> band_of_;
  int overlap_width_ = 1;
};

/// Splits `g` on the given regions. `constant_owner` receives the constant;
/// the other parts start at zero.
std::vector<Part> split_graph(const FlowGraph& g, std::span<const int> global_of_local,
                              const std::vector<std::vector<int>>& regions, int constant_owner = 0);

}  // namespace dpgc
