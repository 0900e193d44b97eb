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
#include "dpgc/partition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

namespace dpgc {

SeparabilityError::SeparabilityError(int tail, int head)
    : std::invalid_argument("arc (" + std::to_string(tail) + ", " + std::to_string(head) +
                            ") has positive capacity but its endpoints share no region"),
      tail_(tail),
      head_(head) {}

int Part::local_of(int global) const {
  auto it = std::lower_bound(global_of_local.begin(), global_of_local.end(), global);
  if (it == global_of_local.end() || *it != global) return -1;
  return static_cast<int>(it - global_of_local.begin());
}

std::vector<BandRange> chain_band_ranges(int lo, int hi, int pieces, int overlap_width) {
  if (pieces < 1) throw TopologyError("need at least one piece");
  if (overlap_width < 1) throw TopologyError("overlap width must be positive");
  const long long width = hi - lo + 1;
  if (pieces == 1) return {BandRange{lo, hi}};
  const long long span = width - overlap_width;
  std::vector<int> c(pieces + 1);
  for (int j = 0; j <= pieces; ++j) c[j] = lo + static_cast<int>((2 * j * span + pieces) / (2LL * pieces));
  // Consecutive cut points at least w apart keep every band in at most two
  // consecutive ranges.
  for (int j = 0; j < pieces; ++j) {
    if (c[j + 1] - c[j] < overlap_width) {
      throw TopologyError("band range [" + std::to_string(lo) + ", " + std::to_string(hi) + "] too narrow for " +
                          std::to_string(pieces) + " pieces");
    }
  }
  std::vector<BandRange> out;
  for (int j = 0; j < pieces; ++j) out.push_back(BandRange{c[j], c[j + 1] + overlap_width - 1});
  return out;
}

RegionSpec chain_regions(std::vector<int> band_of, int n_bands, int n_parts, int overlap_width) {
  RegionSpec spec;
  spec.bands = chain_band_ranges(0, n_bands - 1, n_parts, overlap_width);
  spec.overlap_width = overlap_width;
  spec.regions.resize(spec.bands.size());
  for (int v = 0; v < static_cast<int>(band_of.size()); ++v) {
    const int b = band_of[v];
    for (std::size_t k = 0; k < spec.bands.size(); ++k)
      if (b >= spec.bands[k].lo && b <= spec.bands[k].hi) spec.regions[k].push_back(v);
  }
  spec.band_of = std::move(band_of);
  return spec;
}

RegionSpec stripe_regions(int width, int height, int n_parts, StripeOrientation orientation) {
  if (width < 1 || height < 1) throw TopologyError("empty grid");
  std::vector<int> band_of(static_cast<std::size_t>(width) * height);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) band_of[r * width + c] = orientation == StripeOrientation::kVertical ? c : r;
  const int n_bands = orientation == StripeOrientation::kVertical ? width : height;
  return chain_regions(std::move(band_of), n_bands, n_parts, 1);
}

RegionSpec level_regions(const FlowGraph& g, int n_parts) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> adj(n);
  for (int a = 0; a < g.num_arcs(); ++a) {
    const Arc& arc = g.arc(a);
    if (arc.cap[0] == 0 && arc.cap[1] == 0) continue;
    adj[arc.tail].push_back(arc.head);
    adj[arc.head].push_back(arc.tail);
  }
  std::vector<int> level(n, -1);
  int n_levels = 0;
  std::deque<int> queue;
  for (int root = 0; root < n; ++root) {
    if (level[root] >= 0) continue;
    level[root] = 0;
    queue.push_back(root);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      n_levels = std::max(n_levels, level[u] + 1);
      for (int w : adj[u])
        if (level[w] < 0) {
          level[w] = level[u] + 1;
          queue.push_back(w);
        }
    }
  }
  return chain_regions(std::move(level), std::max(n_levels, 1), n_parts, 1);
}

RegionSpec id_range_regions(int n, int n_parts, int overlap) {
  std::vector<int> band_of(n);
  std::iota(band_of.begin(), band_of.end(), 0);
  return chain_regions(std::move(band_of), n, n_parts, overlap);
}

std::vector<Part> split_graph(const FlowGraph& g, std::span<const int> global_of_local,
                              const std::vector<std::vector<int>>& regions_in, int constant_owner) {
  const int n = g.num_vertices();
  if (static_cast<int>(global_of_local.size()) != n) throw TopologyError("vertex map length mismatch");
  const int n_regions = static_cast<int>(regions_in.size());
  if (n_regions < 1) throw TopologyError("no regions");
  if (constant_owner < 0 || constant_owner >= n_regions) throw TopologyError("bad constant owner");

  const int max_global = n == 0 ? 0 : *std::max_element(global_of_local.begin(), global_of_local.end());
  std::vector<int> local_of_global(static_cast<std::size_t>(max_global) + 1, -1);
  for (int l = 0; l < n; ++l) local_of_global[global_of_local[l]] = l;

  std::vector<std::vector<int>> regions = regions_in;
  std::vector<int> first(n, -1), count(n, 0), loc_first(n, -1), loc_second(n, -1);
  for (int r = 0; r < n_regions; ++r) {
    auto& reg = regions[r];
    std::sort(reg.begin(), reg.end());
    if (std::adjacent_find(reg.begin(), reg.end()) != reg.end()) throw TopologyError("duplicate id in region");
    if (reg.empty()) throw TopologyError("empty region " + std::to_string(r));
    for (int pos = 0; pos < static_cast<int>(reg.size()); ++pos) {
      const int gid = reg[pos];
      const int l = gid >= 0 && gid <= max_global ? local_of_global[gid] : -1;
      if (l < 0) throw TopologyError("region " + std::to_string(r) + " names unknown vertex " + std::to_string(gid));
      if (++count[l] == 1) {
        first[l] = r;
        loc_first[l] = pos;
      } else if (count[l] == 2 && r == first[l] + 1) {
        loc_second[l] = pos;
      } else {
        throw TopologyError("vertex " + std::to_string(gid) + " lies in more than two or non-consecutive regions");
      }
    }
  }
  for (int l = 0; l < n; ++l)
    if (count[l] == 0) throw TopologyError("vertex " + std::to_string(global_of_local[l]) + " not covered");

  std::vector<Part> parts(n_regions);
  for (int r = 0; r < n_regions; ++r) {
    parts[r].global_of_local = regions[r];
    parts[r].graph = FlowGraph(static_cast<int>(regions[r].size()), g.log2_denominator());
  }

  for (int l = 0; l < n; ++l) {
    const Capacity s = g.source_cap(l);
    const Capacity t = g.sink_cap(l);
    if (count[l] == 1) {
      parts[first[l]].graph.add_tlinks(loc_first[l], s, t);
    } else {
      parts[first[l]].graph.add_tlinks(loc_first[l], s.halved(), t.halved());
      parts[first[l] + 1].graph.add_tlinks(loc_second[l], s.halved(), t.halved());
    }
  }

  for (int a = 0; a < g.num_arcs(); ++a) {
    const Arc& arc = g.arc(a);
    if (arc.cap[0] == 0 && arc.cap[1] == 0) continue;
    const int u = arc.tail;
    const int w = arc.head;
    auto in_region = [&](int l, int r) { return r == first[l] || (count[l] == 2 && r == first[l] + 1); };
    auto local_in = [&](int l, int r) { return r == first[l] ? loc_first[l] : loc_second[l]; };
    int shared[2];
    int n_shared = 0;
    for (int r = first[u]; r <= first[u] + 1 && r < n_regions; ++r)
      if (in_region(u, r) && in_region(w, r)) shared[n_shared++] = r;
    if (n_shared == 0) throw SeparabilityError(global_of_local[u], global_of_local[w]);
    Capacity fwd = g.arc_forward(a);
    Capacity bwd = g.arc_backward(a);
    if (n_shared == 2) {
      fwd = fwd.halved();
      bwd = bwd.halved();
    }
    for (int k = 0; k < n_shared; ++k) {
      const int r = shared[k];
      parts[r].graph.add_edge(local_in(u, r), local_in(w, r), fwd, bwd);
    }
  }

  parts[constant_owner].graph.add_accumulated_flow(g.accumulated_flow());
  for (auto& p : parts) p.graph.normalize();
  return parts;
}

Partition Partition::split(const FlowGraph& g, const RegionSpec& spec) {
  Partition p;
  p.n_ = g.num_vertices();
  std::vector<int> identity(p.n_);
  std::iota(identity.begin(), identity.end(), 0);
  p.parts_ = split_graph(g, identity, spec.regions, 0);
  if (!spec.band_of.empty()) {
    if (static_cast<int>(spec.band_of.size()) != p.n_ || spec.bands.size() != spec.regions.size()) {
      throw TopologyError("band description does not match the regions");
    }
    p.band_of_ = spec.band_of;
    p.overlap_width_ = spec.overlap_width;
    for (std::size_t k = 0; k < spec.bands.size(); ++k) p.parts_[k].bands = spec.bands[k];
  }
  p.rebuild();
  return p;
}

void Partition::rebuild() {
  depth_.assign(n_, 0);
  std::vector<int> last(n_, -2);
  for (int k = 0; k < num_parts(); ++k) {
    for (int gid : parts_[k].global_of_local) {
      if (gid < 0 || gid >= n_) throw TopologyError("part holds unknown vertex");
      if (++depth_[gid] > 2 || (depth_[gid] == 2 && last[gid] != k - 1)) {
        throw TopologyError("vertex " + std::to_string(gid) + " breaks the chain layout");
      }
      last[gid] = k;
    }
  }
  for (int v = 0; v < n_; ++v)
    if (depth_[v] == 0) throw TopologyError("vertex " + std::to_string(v) + " not covered");

  overlaps_.assign(std::max(0, num_parts() - 1), Overlap{});
  for (int k = 0; k + 1 < num_parts(); ++k) {
    const auto& a = parts_[k].global_of_local;
    const auto& b = parts_[k + 1].global_of_local;
    Overlap& o = overlaps_[k];
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) {
        ++i;
      } else if (b[j] < a[i]) {
        ++j;
      } else {
        o.global.push_back(a[i]);
        o.local_left.push_back(static_cast<int>(i));
        o.local_right.push_back(static_cast<int>(j));
        ++i;
        ++j;
      }
    }
  }
}

int Partition::num_overlap_vertices() const {
  int total = 0;
  for (const auto& o : overlaps_) total += static_cast<int>(o.global.size());
  return total;
}

std::vector<int> Partition::band_vertices(int lo, int hi) const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v)
    if (band_of_[v] >= lo && band_of_[v] <= hi) out.push_back(v);
  return out;
}

namespace {

Part sum_parts(std::span<const Part> members) {
  std::vector<int> verts;
  int den = 0;
  for (const Part& m : members) {
    verts.insert(verts.end(), m.global_of_local.begin(), m.global_of_local.end());
    den = std::max(den, m.graph.log2_denominator());
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  Part out;
  out.global_of_local = verts;
  out.graph = FlowGraph(static_cast<int>(verts.size()), den);
  out.bands = {members.front().bands.lo, members.back().bands.hi};
  out.machine = members.front().machine;
  FlowGraph& g = out.graph;
  for (const Part& m : members) {
    std::vector<int> map(m.global_of_local.size());
    for (std::size_t l = 0; l < map.size(); ++l) map[l] = out.local_of(m.global_of_local[l]);
    const int shift = den - m.graph.log2_denominator();
    const auto src = m.graph.raw_source();
    const auto snk = m.graph.raw_sink();
    auto gs = g.raw_source();
    auto gt = g.raw_sink();
    for (std::size_t l = 0; l < map.size(); ++l) {
      gs[map[l]] = detail::add_checked(gs[map[l]], detail::shl_checked(src[l], shift));
      gt[map[l]] = detail::add_checked(gt[map[l]], detail::shl_checked(snk[l], shift));
    }
    for (const Arc& a : m.graph.raw_arcs()) {
      if (a.cap[0] == 0 && a.cap[1] == 0) continue;
      g.add_edge(map[a.tail], map[a.head], Capacity::fixed(detail::shl_checked(a.cap[0], shift), den),
                 Capacity::fixed(detail::shl_checked(a.cap[1], shift), den));
    }
    g.add_accumulated_flow(m.graph.accumulated_flow());
  }
  g.normalize();
  return out;
}

}  // namespace

void Partition::merge(int first, int last) {
  if (first < 0 || last >= num_parts() || first > last) throw TopologyError("merge range out of bounds");
  for (int k = first; k < last; ++k) {
    if (overlaps_[k].global.empty()) {
      throw TopologyError("parts " + std::to_string(k) + " and " + std::to_string(k + 1) + " are not adjacent");
    }
  }
  if (first == last) return;
  Part merged = sum_parts(std::span<const Part>(parts_).subspan(first, last - first + 1));
  parts_.erase(parts_.begin() + first + 1, parts_.begin() + last + 1);
  parts_[first] = std::move(merged);
  rebuild();
}

void Partition::merge(std::vector<int> group) {
  if (group.empty()) throw TopologyError("empty merge group");
  std::sort(group.begin(), group.end());
  for (std::size_t i = 1; i < group.size(); ++i) {
    if (group[i] != group[i - 1] + 1) throw TopologyError("merge group members are not neighbours");
  }
  merge(group.front(), group.back());
}

void Partition::refine(int k, const std::vector<std::vector<int>>& sub_regions) {
  if (k < 0 || k >= num_parts()) throw TopologyError("refine index out of bounds");
  const Part& old = parts_[k];
  std::vector<Part> pieces = split_graph(old.graph, old.global_of_local, sub_regions, 0);
  for (auto& p : pieces) p.machine = old.machine;

  std::vector<Part> saved = parts_;
  parts_.erase(parts_.begin() + k);
  parts_.insert(parts_.begin() + k, std::make_move_iterator(pieces.begin()), std::make_move_iterator(pieces.end()));
  try {
    rebuild();
  } catch (...) {
    parts_ = std::move(saved);
    rebuild();
    throw;
  }
}

void Partition::refine(int k, int pieces) {
  if (!has_bands()) throw TopologyError("band refinement needs a band-based partition");
  if (k < 0 || k >= num_parts()) throw TopologyError("refine index out of bounds");
  const BandRange whole = parts_[k].bands;
  const auto ranges = chain_band_ranges(whole.lo, whole.hi, pieces, overlap_width_);
  // The neighbours' shared bands must stay inside the outer pieces only.
  if (k > 0 && ranges.size() > 1 && ranges[1].lo <= parts_[k - 1].bands.hi) {
    throw TopologyError("refinement would share bands with three parts");
  }
  if (k + 1 < num_parts() && ranges.size() > 1 && ranges[ranges.size() - 2].hi >= parts_[k + 1].bands.lo) {
    throw TopologyError("refinement would share bands with three parts");
  }
  std::vector<std::vector<int>> regions;
  for (const auto& r : ranges) regions.push_back(band_vertices(r.lo, r.hi));
  refine(k, regions);
  for (std::size_t j = 0; j < ranges.size(); ++j) parts_[k + j].bands = ranges[j];
}

std::vector<int> Partition::adjust_boundary(int k, int shift) {
  if (!has_bands()) throw TopologyError("boundary adjustment needs a band-based partition");
  if (k < 0 || k + 1 >= num_parts()) throw TopologyError("adjust_boundary pair out of bounds");
  Part& a = parts_[k];
  Part& b = parts_[k + 1];
  const BandRange new_a{a.bands.lo, a.bands.hi + shift};
  const BandRange new_b{b.bands.lo + shift, b.bands.hi};
  const bool three_way = (k > 0 && new_b.lo <= parts_[k - 1].bands.hi) ||
                         (k + 2 < num_parts() && new_a.hi >= parts_[k + 2].bands.lo);
  if (three_way || new_b.lo <= new_a.lo || new_a.hi >= new_b.hi) {
    throw TopologyError("shift " + std::to_string(shift) + " breaks the chain layout");
  }

  const Capacity acc_b = b.graph.accumulated_flow();
  Part pair = sum_parts(std::span<const Part>(parts_).subspan(k, 2));
  std::vector<int> ra, rb;
  for (int gid : pair.global_of_local) {
    const int band = band_of_[gid];
    if (band >= new_a.lo && band <= new_a.hi) ra.push_back(gid);
    if (band >= new_b.lo && band <= new_b.hi) rb.push_back(gid);
  }
  std::vector<Part> fresh = split_graph(pair.graph, pair.global_of_local, {ra, rb}, 0);
  fresh[0].graph.add_accumulated_flow(-acc_b);
  fresh[1].graph.add_accumulated_flow(acc_b);
  fresh[0].bands = new_a;
  fresh[1].bands = new_b;
  fresh[0].machine = a.machine;
  fresh[1].machine = b.machine;

  const int lo = std::min(b.bands.lo, new_b.lo);
  const int hi = std::max(a.bands.hi, new_a.hi);
  std::vector<int> moved = band_vertices(lo, hi);
  std::vector<int> pair_ids = pair.global_of_local;
  moved.erase(std::remove_if(moved.begin(), moved.end(),
                             [&](int v) { return !std::binary_search(pair_ids.begin(), pair_ids.end(), v); }),
              moved.end());

  parts_[k] = std::move(fresh[0]);
  parts_[k + 1] = std::move(fresh[1]);
  rebuild();
  return moved;
}

MultilinearPolynomial Partition::total_polynomial() const {
  MultilinearPolynomial total(n_);
  for (const Part& p : parts_) total += lift(polynomial_of(p.graph), p.global_of_local, n_);
  return total;
}

Capacity Partition::total_accumulated_flow() const {
  Capacity total;
  for (const Part& p : parts_) total += p.graph.accumulated_flow();
  return total;
}

Assignment Partition::assemble(std::span<const Assignment> local) const {
  if (static_cast<int>(local.size()) != num_parts()) throw std::invalid_argument("one assignment per part expected");
  Assignment x(n_, 0);
  for (int k = num_parts() - 1; k >= 0; --k) {
    const auto& ids = parts_[k].global_of_local;
    if (local[k].size() != ids.size()) throw std::invalid_argument("assignment length mismatch");
    for (std::size_t l = 0; l < ids.size(); ++l) x[ids[l]] = local[k][l];
  }
  return x;
}

int Partition::finest_log2_denominator() const {
  int den = 0;
  for (const Part& p : parts_) den = std::max(den, p.graph.log2_denominator());
  return den;
}

}  // namespace dpgc
