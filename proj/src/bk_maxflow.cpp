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
#include "dpgc/bk_maxflow.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace dpgc {

namespace {
constexpr int kInfiniteDist = std::numeric_limits<int>::max();
}  // namespace

void BkSolver::reset() {
  initialized_ = false;
  active_.clear();
  orphans_.clear();
}

void BkSolver::bind(FlowGraph& g) {
  if (initialized_ && (g.num_vertices() != n_ || g.num_arcs() != m_)) {
    throw std::logic_error("BkSolver: graph changed shape since last solve");
  }
  graph_ = &g;
  arcs_ = g.raw_arcs();
  src_ = g.raw_source();
  snk_ = g.raw_sink();
}

void BkSolver::set_active(int v) {
  if (!queued_[v]) {
    queued_[v] = 1;
    active_.push_back(v);
  }
}

int BkSolver::next_active() {
  while (!active_.empty()) {
    const int v = active_.front();
    active_.pop_front();
    queued_[v] = 0;
    if (parent_[v] != kNone) return v;
  }
  return kNone;
}

void BkSolver::set_orphan(int v) {
  parent_[v] = kOrphan;
  orphans_.push_back(v);
}

void BkSolver::init_trees() {
  const FlowGraph& g = *graph_;
  n_ = g.num_vertices();
  m_ = g.num_arcs();

  first_.assign(n_ + 1, 0);
  for (const Arc& a : arcs_) {
    ++first_[a.tail + 1];
    ++first_[a.head + 1];
  }
  for (int v = 0; v < n_; ++v) first_[v + 1] += first_[v];
  out_.assign(2 * m_, 0);
  to_.assign(2 * m_, 0);
  std::vector<int> fill(first_.begin(), first_.end() - 1);
  for (int a = 0; a < m_; ++a) {
    const Arc& arc = arcs_[a];
    out_[fill[arc.tail]++] = 2 * a;
    out_[fill[arc.head]++] = 2 * a + 1;
    to_[2 * a] = arc.head;
    to_[2 * a + 1] = arc.tail;
  }

  parent_.assign(n_, kNone);
  in_sink_tree_.assign(n_, 0);
  ts_.assign(n_, 0);
  dist_.assign(n_, 0);
  queued_.assign(n_, 0);
  active_.clear();
  orphans_.clear();
  time_ = 0;
  initialized_ = true;
}

std::int64_t BkSolver::augment(int middle) {
  const int u = to_[middle ^ 1];
  const int w = to_[middle];

  std::int64_t bottleneck = rcap(middle);
  int v = u;
  while (parent_[v] != kTerminal) {
    const int h = parent_[v];
    bottleneck = std::min(bottleneck, rcap(h ^ 1));
    v = to_[h];
  }
  bottleneck = std::min(bottleneck, src_[v]);
  v = w;
  while (parent_[v] != kTerminal) {
    const int h = parent_[v];
    bottleneck = std::min(bottleneck, rcap(h));
    v = to_[h];
  }
  bottleneck = std::min(bottleneck, snk_[v]);

  rcap(middle) -= bottleneck;
  rcap(middle ^ 1) += bottleneck;
  v = u;
  while (parent_[v] != kTerminal) {
    const int h = parent_[v];
    rcap(h) += bottleneck;
    rcap(h ^ 1) -= bottleneck;
    const int next = to_[h];
    if (rcap(h ^ 1) == 0) set_orphan(v);
    v = next;
  }
  src_[v] -= bottleneck;
  if (src_[v] == 0) set_orphan(v);
  v = w;
  while (parent_[v] != kTerminal) {
    const int h = parent_[v];
    rcap(h ^ 1) += bottleneck;
    rcap(h) -= bottleneck;
    const int next = to_[h];
    if (rcap(h) == 0) set_orphan(v);
    v = next;
  }
  snk_[v] -= bottleneck;
  if (snk_[v] == 0) set_orphan(v);

  auto& acc = graph_->raw_accumulated_flow();
  acc = detail::add_checked(acc, bottleneck);
  if (observer_) observer_(*graph_, graph_->value(bottleneck));
  return bottleneck;
}

void BkSolver::process_orphan(int v) {
  const bool sink_side = in_sink_tree_[v];
  int best_arc = kNone;
  int best_dist = kInfiniteDist;

  for (int k = first_[v]; k < first_[v + 1]; ++k) {
    const int h = out_[k];
    const bool residual = sink_side ? rcap(h) > 0 : rcap(h ^ 1) > 0;
    if (!residual) continue;
    const int j = to_[h];
    if (parent_[j] == kNone || in_sink_tree_[j] != sink_side) continue;

    // Distance from j to its tree root, or infinity if the path hits an orphan.
    int d = 0;
    int x = j;
    while (true) {
      if (ts_[x] == time_) {
        d += dist_[x];
        break;
      }
      const int p = parent_[x];
      ++d;
      if (p == kTerminal) {
        ts_[x] = time_;
        dist_[x] = 1;
        break;
      }
      if (p == kOrphan) {
        d = kInfiniteDist;
        break;
      }
      x = to_[p];
    }
    if (d == kInfiniteDist) continue;
    if (d < best_dist) {
      best_arc = h;
      best_dist = d;
    }
    for (x = j; ts_[x] != time_; x = to_[parent_[x]]) {
      ts_[x] = time_;
      dist_[x] = d--;
    }
  }

  if (best_arc != kNone) {
    parent_[v] = best_arc;
    ts_[v] = time_;
    dist_[v] = best_dist + 1;
    return;
  }

  for (int k = first_[v]; k < first_[v + 1]; ++k) {
    const int h = out_[k];
    const int j = to_[h];
    const int p = parent_[j];
    if (p == kNone || in_sink_tree_[j] != sink_side) continue;
    const bool residual = sink_side ? rcap(h) > 0 : rcap(h ^ 1) > 0;
    if (residual) set_active(j);
    if (p != kTerminal && p != kOrphan && to_[p] == v) set_orphan(j);
  }
  parent_[v] = kNone;
}

void BkSolver::drain_orphans() {
  while (!orphans_.empty()) {
    const int v = orphans_.front();
    orphans_.pop_front();
    if (parent_[v] == kOrphan) process_orphan(v);
  }
}

SolveResult BkSolver::solve(FlowGraph& g) {
  bind(g);
  std::int64_t flow = 0;
  auto& acc = g.raw_accumulated_flow();

  if (!initialized_) {
    init_trees();
    for (int v = 0; v < n_; ++v) {
      const std::int64_t common = std::min(src_[v], snk_[v]);
      if (common > 0) {
        src_[v] -= common;
        snk_[v] -= common;
        acc = detail::add_checked(acc, common);
        flow += common;
        if (observer_) observer_(g, g.value(common));
      }
      if (src_[v] > 0) {
        in_sink_tree_[v] = 0;
      } else if (snk_[v] > 0) {
        in_sink_tree_[v] = 1;
      } else {
        continue;
      }
      parent_[v] = kTerminal;
      ts_[v] = 0;
      dist_[v] = 1;
      set_active(v);
    }
  } else {
    ++time_;
    drain_orphans();
  }

  int current = kNone;
  while (true) {
    int i = current;
    if (i == kNone || parent_[i] == kNone) {
      i = next_active();
      if (i == kNone) break;
    }
    current = kNone;

    int middle = kNone;
    const bool sink_side = in_sink_tree_[i];
    for (int k = first_[i]; k < first_[i + 1]; ++k) {
      const int h = out_[k];
      if (sink_side ? rcap(h ^ 1) == 0 : rcap(h) == 0) continue;
      const int j = to_[h];
      if (parent_[j] == kNone) {
        in_sink_tree_[j] = sink_side;
        parent_[j] = h ^ 1;
        ts_[j] = ts_[i];
        dist_[j] = dist_[i] + 1;
        set_active(j);
      } else if (in_sink_tree_[j] != sink_side) {
        middle = sink_side ? (h ^ 1) : h;
        break;
      } else if (ts_[j] <= ts_[i] && dist_[j] > dist_[i]) {
        parent_[j] = h ^ 1;
        ts_[j] = ts_[i];
        dist_[j] = dist_[i] + 1;
      }
    }

    ++time_;
    if (middle != kNone) {
      current = i;
      flow += augment(middle);
      drain_orphans();
    }
  }

  SolveResult r;
  r.flow = g.value(flow);
  r.assignment = extract_cut();
  return r;
}

Assignment BkSolver::extract_cut() const {
  Assignment x(n_, 0);
  std::vector<int> stack;
  for (int v = 0; v < n_; ++v) {
    if (snk_[v] > 0) {
      x[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int k = first_[u]; k < first_[u + 1]; ++k) {
      const int h = out_[k];
      const int j = to_[h];
      if (!x[j] && rcap(h ^ 1) > 0) {
        x[j] = 1;
        stack.push_back(j);
      }
    }
  }
  return x;
}

void BkSolver::apply_tlink_deltas(FlowGraph& g, std::span<const TlinkDelta> deltas) {
  for (const TlinkDelta& d : deltas) {
    if (d.vertex < 0 || d.vertex >= g.num_vertices()) {
      throw std::out_of_range("apply_tlink_deltas: unknown vertex " + std::to_string(d.vertex));
    }
  }
  // Rescale first so raw spans stay valid below.
  for (const TlinkDelta& d : deltas) {
    g.to_raw(d.d_source);
    g.to_raw(d.d_sink);
  }
  bind(g);
  auto& acc = g.raw_accumulated_flow();

  std::vector<int> touched;
  for (const TlinkDelta& d : deltas) {
    const int v = d.vertex;
    std::int64_t s = detail::add_checked(src_[v], g.to_raw(d.d_source));
    std::int64_t t = detail::add_checked(snk_[v], g.to_raw(d.d_sink));
    const std::int64_t deficit = std::max<std::int64_t>({0, -s, -t});
    if (deficit > 0) {
      s += deficit;
      t += deficit;
      acc = detail::sub_checked(acc, deficit);
    }
    const std::int64_t common = std::min(s, t);
    s -= common;
    t -= common;
    acc = detail::add_checked(acc, common);
    src_[v] = s;
    snk_[v] = t;
    touched.push_back(v);
  }
  if (!initialized_) return;

  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (int v : touched) {
    const std::int64_t tr = src_[v] - snk_[v];
    if (tr == 0) {
      if (parent_[v] == kTerminal) set_orphan(v);
      continue;
    }
    const std::uint8_t want_sink = tr < 0 ? 1 : 0;
    if (parent_[v] == kNone || parent_[v] == kOrphan || in_sink_tree_[v] != want_sink) {
      const bool switched = parent_[v] != kNone && in_sink_tree_[v] != want_sink;
      for (int k = first_[v]; k < first_[v + 1]; ++k) {
        const int h = out_[k];
        const int j = to_[h];
        if (switched && parent_[j] == (h ^ 1)) set_orphan(j);
        if (parent_[j] != kNone && parent_[j] != kOrphan && in_sink_tree_[j] != want_sink) {
          const bool residual = want_sink ? rcap(h ^ 1) > 0 : rcap(h) > 0;
          if (residual) set_active(j);
        }
      }
    }
    in_sink_tree_[v] = want_sink;
    parent_[v] = kTerminal;
    ts_[v] = time_;
    dist_[v] = 1;
    set_active(v);
  }
}

SolveResult maxflow(FlowGraph& g) {
  BkSolver solver;
  return solver.solve(g);
}

}  // namespace dpgc
