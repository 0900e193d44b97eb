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
#include "dpgc/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <climits>
#include <exception>
#include <stdexcept>

namespace dpgc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Fn>
void for_each_part(ExecutionPolicy policy, int workers, int n, Fn&& fn) {
  if (policy == ExecutionPolicy::kSerial || n <= 1) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int k = 0; k < n; ++k) {
    try {
      fn(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double ratio(const Capacity& num, const Capacity& den) {
  if (den.is_zero()) return 1.0;
  return num.to_double() / den.to_double();
}

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::kSerial:
      return "serial";
    case Mode::kBaselinePbk:
      return "baseline_pbk";
    case Mode::kNaiveConverged:
      return "naive_converged";
    case Mode::kDynamic:
      return "dynamic";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "serial") return Mode::kSerial;
  if (s == "baseline_pbk" || s == "baseline") return Mode::kBaselinePbk;
  if (s == "naive_converged" || s == "naive") return Mode::kNaiveConverged;
  if (s == "dynamic") return Mode::kDynamic;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

std::vector<Disagreement> disagreement(const Partition& p, std::span<const Assignment> local) {
  if (static_cast<int>(local.size()) != p.num_parts()) throw std::invalid_argument("one assignment per part expected");
  std::vector<Disagreement> out;
  for (int k = 0; k + 1 < p.num_parts(); ++k) {
    const Overlap& o = p.overlap(k);
    for (std::size_t i = 0; i < o.global.size(); ++i) {
      const int a = local[k].at(o.local_left[i]);
      const int b = local[k + 1].at(o.local_right[i]);
      if (a != b) out.push_back({k, static_cast<int>(i), o.global[i], a, b});
    }
  }
  return out;
}

DualState::DualState(Capacity step_init, Capacity step_min, Capacity step_max)
    : step_init_(step_init), step_min_(step_min), step_max_(max(step_max, step_min)) {
  if (!step_min.is_positive() || !step_init.is_positive()) throw std::invalid_argument("steps must be positive");
  step_init_ = min(max(step_init_, step_min_), step_max_);
}

std::vector<std::vector<TlinkDelta>> DualState::update(const Partition& p, std::span<const Disagreement> diffs) {
  std::vector<std::vector<TlinkDelta>> deltas(p.num_parts());
  for (const Disagreement& d : diffs) {
    auto [it, fresh] = entries_.try_emplace(d.vertex, DualEntry{Capacity{}, step_init_, 0});
    DualEntry& e = it->second;
    const int s = d.left_label - d.right_label;
    if (e.last_sign == s) {
      e.step = min(e.step.doubled(), step_max_);
    } else if (e.last_sign == -s) {
      e.step = max(e.step.halved(), step_min_);
    }
    e.last_sign = s;
    const Capacity dl = s > 0 ? e.step : -e.step;
    e.lambda += dl;
    const Overlap& o = p.overlap(d.overlap);
    deltas[d.overlap].push_back({o.local_left[d.index], dl, Capacity{}});
    deltas[d.overlap + 1].push_back({o.local_right[d.index], -dl, Capacity{}});
  }
  return deltas;
}

void DualState::prune(const Partition& p, std::span<const int> reset_vertices) {
  for (int v : reset_vertices) entries_.erase(v);
  std::erase_if(entries_, [&](const auto& kv) { return p.split_depth(kv.first) < 2; });
}

const DualEntry* DualState::find(int vertex) const {
  auto it = entries_.find(vertex);
  return it == entries_.end() ? nullptr : &it->second;
}

bool operator==(const IterationStats& a, const IterationStats& b) {
  return a.iteration == b.iteration && a.parts == b.parts && a.n_diff == b.n_diff &&
         a.overlap_vertices == b.overlap_vertices && a.part_flows == b.part_flows && a.dual_bound == b.dual_bound &&
         a.accumulated_after == b.accumulated_after && a.merges == b.merges && a.splits == b.splits;
}

bool operator==(const CutResult& a, const CutResult& b) {
  return a.assignment == b.assignment && a.cut_value == b.cut_value && a.dual_bound == b.dual_bound &&
         a.converged == b.converged && a.iterations == b.iterations &&
         a.parallel_iterations == b.parallel_iterations && a.first_disagreement == b.first_disagreement &&
         a.merges == b.merges && a.splits == b.splits && a.final_parts == b.final_parts && a.stats == b.stats &&
         a.relative_reused_flow == b.relative_reused_flow && a.transport == b.transport;
}

DynamicHooks stall_merge_hooks(int iter_patience) {
  DynamicHooks h;
  h.inner_stop = [iter_patience](const EngineView& v) { return v.stalled >= iter_patience; };
  h.should_merge = [](const EngineView& v) {
    std::vector<std::vector<int>> groups;
    for (int k = 0; k + 1 < v.partition.num_parts(); k += 2) groups.push_back({k, k + 1});
    return groups;
  };
  return h;
}

DynamicHooks schedule_hooks(int period, int group_size) {
  if (period < 1 || group_size < 2) throw std::invalid_argument("schedule needs period >= 1 and group size >= 2");
  DynamicHooks h;
  h.inner_stop = [period](const EngineView& v) { return v.since_topology_change >= period; };
  h.should_merge = [group_size](const EngineView& v) {
    std::vector<std::vector<int>> groups;
    const int n = v.partition.num_parts();
    for (int first = 0; first + 1 < n; first += group_size) {
      std::vector<int> g;
      for (int k = first; k < std::min(n, first + group_size); ++k) g.push_back(k);
      groups.push_back(std::move(g));
    }
    return groups;
  };
  return h;
}

void validate(const SolverConfig& cfg) {
  if (cfg.n_subgraphs < 1) throw std::invalid_argument("n_subgraphs must be >= 1");
  if (cfg.iter_patience < 1) throw std::invalid_argument("iter_patience must be >= 1");
  if (cfg.merge_group_size < 2) throw std::invalid_argument("merge_group_size must be >= 2");
  if (cfg.merge_period < 1) throw std::invalid_argument("merge_period must be >= 1");
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!cfg.step_init.is_positive()) throw std::invalid_argument("step_init must be positive");
  if (cfg.workers < 0) throw std::invalid_argument("workers must be >= 0");
}

CutResult solve_serial(const FlowGraph& g, const SolverConfig& cfg) {
  validate(cfg);
  const auto t0 = Clock::now();
  FlowGraph work = g;
  SolveResult r = maxflow(work);
  CutResult res;
  res.cut_value = cut_cost(g, r.assignment);
  res.dual_bound = work.accumulated_flow();
  res.assignment = std::move(r.assignment);
  res.converged = true;
  res.iterations = 1;
  res.final_parts = 1;
  IterationStats st;
  st.iteration = 1;
  st.parts = 1;
  st.part_flows = {r.flow};
  st.dual_bound = res.dual_bound;
  st.accumulated_after = res.dual_bound;
  st.seconds = seconds_since(t0);
  if (cfg.on_iteration) cfg.on_iteration(st);
  res.stats.push_back(std::move(st));
  res.wall_seconds = seconds_since(t0);
  return res;
}

namespace {

void apply_merges(Partition& p, Transport& transport, std::vector<std::vector<int>> groups,
                  IterationStats& st) {
  for (auto& grp : groups) std::sort(grp.begin(), grp.end());
  groups.erase(std::remove_if(groups.begin(), groups.end(), [](const auto& grp) { return grp.size() < 2; }),
               groups.end());
  std::sort(groups.begin(), groups.end());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = 1; j < groups[i].size(); ++j) {
      if (groups[i][j] != groups[i][j - 1] + 1) throw TopologyError("merge group members are not neighbours");
    }
    if (groups[i].front() < 0 || groups[i].back() >= p.num_parts()) throw TopologyError("merge group out of range");
    if (i > 0 && groups[i].front() <= groups[i - 1].back()) throw TopologyError("merge groups overlap");
  }
  // Back to front so earlier indices stay valid.
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    const int target = p.part(it->front()).machine;
    for (int k : *it) transport.transfer_part(p.part(k), target);
    p.merge(*it);
  }
  st.merges = std::move(groups);
}

void apply_splits(Partition& p, std::vector<SplitRequest> reqs) {
  std::sort(reqs.begin(), reqs.end(), [](const auto& a, const auto& b) { return a.part > b.part; });
  for (std::size_t i = 1; i < reqs.size(); ++i)
    if (reqs[i].part == reqs[i - 1].part) throw TopologyError("part split twice in one round");
  for (const auto& r : reqs) {
    if (r.regions.empty()) {
      p.refine(r.part, r.pieces);
    } else {
      p.refine(r.part, r.regions);
    }
  }
}

CutResult run_loop(const FlowGraph& g, const SolverConfig& cfg, const DynamicHooks& hooks) {
  validate(cfg);
  const auto t0 = Clock::now();
  const RegionSpec spec = cfg.regions ? *cfg.regions : level_regions(g, cfg.n_subgraphs);
  Partition p = Partition::split(g, spec);
  auto transport = make_transport(cfg.transport);
  for (int k = 0; k < p.num_parts(); ++k) p.part(k).machine = transport->machine_of_part(k, p.num_parts());

  const Capacity step_min = Capacity::fixed(1, p.finest_log2_denominator());
  DualState dual(cfg.step_init, step_min, max(g.total_capacity(), step_min));
  const Capacity base = g.accumulated_flow();

  CutResult res;
  std::vector<Assignment> local;
  std::optional<Capacity> acc_at_merge;
  int best = INT_MAX;
  int stalled = 0;
  int since_topology = 0;
  int n_diff = 0;
  bool outer_start = true;

  auto view = [&]() {
    return EngineView{p, res.stats, res.iterations, n_diff, best, stalled, since_topology};
  };

  while (true) {
    const auto ti = Clock::now();
    IterationStats st;
    if (outer_start && hooks.should_split) {
      auto reqs = hooks.should_split(view());
      if (!reqs.empty()) {
        st.splits = static_cast<int>(reqs.size());
        apply_splits(p, std::move(reqs));
        dual.prune(p);
        res.splits += st.splits;
        since_topology = 0;
      }
    }
    outer_start = false;

    const int n_parts = p.num_parts();
    local.assign(n_parts, {});
    st.part_flows.assign(n_parts, Capacity{});
    for_each_part(cfg.policy, cfg.workers, n_parts, [&](int k) {
      Part& part = p.part(k);
      SolveResult r = part.solver.solve(part.graph);
      local[k] = std::move(r.assignment);
      st.part_flows[k] = r.flow;
    });
    ++res.iterations;
    if (n_parts >= 2) ++res.parallel_iterations;
    st.iteration = res.iterations;
    st.parts = n_parts;
    st.overlap_vertices = p.num_overlap_vertices();
    st.dual_bound = p.total_accumulated_flow();
    res.dual_bound = st.dual_bound;

    for (int k = 0; k + 1 < n_parts; ++k) {
      const auto count = p.overlap(k).global.size();
      transport->exchange_labels(p.part(k).machine, p.part(k + 1).machine, count);
      transport->exchange_labels(p.part(k + 1).machine, p.part(k).machine, count);
    }
    const auto diffs = disagreement(p, local);
    n_diff = static_cast<int>(diffs.size());
    st.n_diff = n_diff;
    if (res.iterations == 1) res.first_disagreement = n_diff;

    const bool done = n_diff == 0 || res.iterations >= cfg.max_iterations;
    if (!done) {
      const auto deltas = dual.update(p, diffs);
      for_each_part(cfg.policy, cfg.workers, n_parts, [&](int k) {
        if (!deltas[k].empty()) p.part(k).solver.apply_tlink_deltas(p.part(k).graph, deltas[k]);
      });
      if (n_diff >= best) {
        ++stalled;
      } else {
        best = n_diff;
        stalled = 0;
      }
      ++since_topology;
      if (hooks.inner_stop && hooks.inner_stop(view())) {
        if (hooks.should_merge) apply_merges(p, *transport, hooks.should_merge(view()), st);
        if (!st.merges.empty()) {
          res.merges += static_cast<int>(st.merges.size());
          acc_at_merge = p.total_accumulated_flow();
          dual.prune(p);
          since_topology = 0;
        }
        stalled = 0;
        outer_start = true;
      }
    }
    st.accumulated_after = p.total_accumulated_flow();
    st.seconds = seconds_since(ti);
    if (cfg.on_iteration) cfg.on_iteration(st);
    res.stats.push_back(std::move(st));
    if (done) break;
  }

  res.converged = n_diff == 0;
  res.final_parts = p.num_parts();
  res.assignment = p.assemble(local);
  res.cut_value = cut_cost(g, res.assignment);
  if (res.converged && res.cut_value != res.dual_bound) {
    throw std::logic_error("consistent labels but cut value " + res.cut_value.to_string() + " != dual bound " +
                           res.dual_bound.to_string());
  }
  if (acc_at_merge) {
    res.relative_reused_flow = ratio(*acc_at_merge - base, res.cut_value - base);
  } else {
    res.relative_reused_flow = res.converged ? 1.0 : 0.0;
  }
  res.transport = transport->stats();
  res.wall_seconds = seconds_since(t0);
  return res;
}

}  // namespace

CutResult solve_baseline_pbk(const FlowGraph& g, const SolverConfig& cfg) { return run_loop(g, cfg, DynamicHooks{}); }

CutResult solve_naive_converged(const FlowGraph& g, const SolverConfig& cfg) {
  return run_loop(g, cfg, stall_merge_hooks(cfg.iter_patience));
}

CutResult solve_dynamic(const FlowGraph& g, const SolverConfig& cfg, const DynamicHooks& hooks) {
  return run_loop(g, cfg, hooks);
}

CutResult run(const SolverConfig& cfg, const FlowGraph& g) {
  switch (cfg.mode) {
    case Mode::kSerial:
      return solve_serial(g, cfg);
    case Mode::kBaselinePbk:
      return solve_baseline_pbk(g, cfg);
    case Mode::kNaiveConverged:
      return solve_naive_converged(g, cfg);
    case Mode::kDynamic:
      return solve_dynamic(g, cfg, cfg.hooks ? *cfg.hooks : schedule_hooks(cfg.merge_period, cfg.merge_group_size));
  }
  throw std::invalid_argument("unknown mode");
}

void write_stats_header(std::ostream& os) {
  os << "iteration,parts,n_diff,overlap_vertices,dual_bound,accumulated_after,merges,splits,part_flows\n";
}

void write_stats_row(std::ostream& os, const IterationStats& s) {
  os << s.iteration << ',' << s.parts << ',' << s.n_diff << ',' << s.overlap_vertices << ','
     << s.dual_bound.to_string() << ',' << s.accumulated_after.to_string() << ',' << s.merges.size() << ','
     << s.splits << ',';
  for (std::size_t k = 0; k < s.part_flows.size(); ++k) os << (k ? ";" : "") << s.part_flows[k].to_string();
  os << '\n';
}

FlowReuse measure_flow_reuse(const FlowGraph& g, const RegionSpec& regions, int rounds, int repetitions,
                             Capacity step_init) {
  if (rounds < 0 || repetitions < 1) throw std::invalid_argument("bad flow reuse parameters");
  Partition p = Partition::split(g, regions);
  const Capacity step_min = Capacity::fixed(1, p.finest_log2_denominator());
  DualState dual(step_init, step_min, max(g.total_capacity(), step_min));
  FlowReuse out;
  std::vector<Assignment> local(p.num_parts());
  for (int r = 0; r < rounds; ++r) {
    for (int k = 0; k < p.num_parts(); ++k) local[k] = p.part(k).solver.solve(p.part(k).graph).assignment;
    ++out.rounds_run;
    const auto diffs = disagreement(p, local);
    if (diffs.empty()) break;
    const auto deltas = dual.update(p, diffs);
    for (int k = 0; k < p.num_parts(); ++k) p.part(k).solver.apply_tlink_deltas(p.part(k).graph, deltas[k]);
  }
  if (p.num_parts() > 1) p.merge(0, p.num_parts() - 1);
  const FlowGraph& merged = p.part(0).graph;
  out.reused = merged.accumulated_flow() - g.accumulated_flow();

  out.merged_seconds = out.original_seconds = 1e300;
  for (int rep = 0; rep < repetitions; ++rep) {
    FlowGraph m = merged;
    auto t0 = Clock::now();
    out.merged_flow = maxflow(m).flow;
    out.merged_seconds = std::min(out.merged_seconds, seconds_since(t0));
    FlowGraph o = g;
    t0 = Clock::now();
    out.maxflow = maxflow(o).flow;
    out.original_seconds = std::min(out.original_seconds, seconds_since(t0));
  }
  if (out.merged_flow + out.reused != out.maxflow) {
    throw std::logic_error("merged residual flow plus reused flow differs from the original maxflow");
  }
  out.relative_reused_flow = ratio(out.reused, out.maxflow);
  return out;
}

}  // namespace dpgc
