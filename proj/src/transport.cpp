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
#include "dpgc/transport.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace dpgc {

namespace {

constexpr std::uint32_t kGraphMagic = 0x43475044;  // "DPGC"

class Writer {
 public:
  template <typename T>
  void put(T v) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
    out.insert(out.end(), p, p + sizeof(T));
  }
  std::vector<std::uint8_t> out;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : bytes(b) {}
  template <typename T>
  T get() {
    if (pos + sizeof(T) > bytes.size()) throw std::runtime_error("truncated graph payload");
    T v;
    std::memcpy(&v, bytes.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
  }
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void write_graph(Writer& w, const FlowGraph& g) {
  w.put(kGraphMagic);
  w.put<std::int32_t>(g.num_vertices());
  w.put<std::int32_t>(g.num_arcs());
  w.put<std::int32_t>(g.log2_denominator());
  w.put<std::int64_t>(g.raw_accumulated_flow());
  const auto src = g.raw_source();
  const auto snk = g.raw_sink();
  for (int v = 0; v < g.num_vertices(); ++v) {
    w.put<std::int64_t>(src[v]);
    w.put<std::int64_t>(snk[v]);
  }
  for (const Arc& a : g.raw_arcs()) {
    w.put<std::int32_t>(a.tail);
    w.put<std::int32_t>(a.head);
    w.put<std::int64_t>(a.cap[0]);
    w.put<std::int64_t>(a.cap[1]);
  }
}

FlowGraph read_graph(Reader& r) {
  if (r.get<std::uint32_t>() != kGraphMagic) throw std::runtime_error("bad graph payload");
  const int n = r.get<std::int32_t>();
  const int m = r.get<std::int32_t>();
  const int den = r.get<std::int32_t>();
  FlowGraph g(n, den);
  g.raw_accumulated_flow() = r.get<std::int64_t>();
  auto src = g.raw_source();
  auto snk = g.raw_sink();
  for (int v = 0; v < n; ++v) {
    src[v] = r.get<std::int64_t>();
    snk[v] = r.get<std::int64_t>();
  }
  for (int a = 0; a < m; ++a) {
    const int tail = r.get<std::int32_t>();
    const int head = r.get<std::int32_t>();
    const std::int64_t fwd = r.get<std::int64_t>();
    const std::int64_t bwd = r.get<std::int64_t>();
    g.add_edge(tail, head, Capacity::fixed(fwd, den), Capacity::fixed(bwd, den));
  }
  // add_edge may have normalized nothing, but keep the sender's denominator.
  if (g.log2_denominator() != den) throw std::runtime_error("graph payload denominator drift");
  return g;
}

}  // namespace

std::vector<std::uint8_t> serialize_graph(const FlowGraph& g) {
  Writer w;
  write_graph(w, g);
  return std::move(w.out);
}

FlowGraph deserialize_graph(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  return read_graph(r);
}

std::vector<std::uint8_t> serialize_part(const Part& p) {
  Writer w;
  write_graph(w, p.graph);
  w.put<std::int32_t>(p.bands.lo);
  w.put<std::int32_t>(p.bands.hi);
  for (int gid : p.global_of_local) w.put<std::int32_t>(gid);
  return std::move(w.out);
}

void deserialize_part(std::span<const std::uint8_t> bytes, Part& into) {
  Reader r(bytes);
  into.graph = read_graph(r);
  into.bands.lo = r.get<std::int32_t>();
  into.bands.hi = r.get<std::int32_t>();
  into.global_of_local.resize(into.graph.num_vertices());
  for (auto& gid : into.global_of_local) gid = r.get<std::int32_t>();
  into.solver.reset();
}

std::size_t serialized_size(const Part& p) {
  return 4 + 3 * 4 + 8 + 16 * static_cast<std::size_t>(p.graph.num_vertices()) +
         24 * static_cast<std::size_t>(p.graph.num_arcs()) + 8 + 4 * p.global_of_local.size();
}

int Transport::machine_of_part(int k, int n_parts) const {
  return static_cast<int>(static_cast<long long>(k) * machines() / std::max(n_parts, 1));
}

void Transport::transfer_part(Part& p, int to) {
  if (p.machine == to) return;
  const auto bytes = serialize_part(p);
  send(p.machine, to, bytes.size());
  deserialize_part(bytes, p);
  p.machine = to;
}

void Transport::transfer_band(const Part& p, std::span<const int> vertices, int to) {
  if (p.machine == to || vertices.empty()) return;
  std::vector<int> locals;
  for (int gid : vertices) {
    const int l = p.local_of(gid);
    if (l >= 0) locals.push_back(l);
  }
  std::sort(locals.begin(), locals.end());
  Part band;
  band.graph = FlowGraph(static_cast<int>(locals.size()), p.graph.log2_denominator());
  for (std::size_t i = 0; i < locals.size(); ++i) {
    band.global_of_local.push_back(p.global_of_local[locals[i]]);
    band.graph.raw_source()[i] = p.graph.raw_source()[locals[i]];
    band.graph.raw_sink()[i] = p.graph.raw_sink()[locals[i]];
  }
  for (int a = 0; a < p.graph.num_arcs(); ++a) {
    const Arc& arc = p.graph.arc(a);
    auto ti = std::lower_bound(locals.begin(), locals.end(), arc.tail);
    auto hi = std::lower_bound(locals.begin(), locals.end(), arc.head);
    if (ti == locals.end() || *ti != arc.tail || hi == locals.end() || *hi != arc.head) continue;
    band.graph.add_edge(static_cast<int>(ti - locals.begin()), static_cast<int>(hi - locals.begin()),
                        p.graph.arc_forward(a), p.graph.arc_backward(a));
  }
  send(p.machine, to, serialize_part(band).size());
}

void Transport::exchange_labels(int from, int to, std::size_t count) {
  if (count > 0) send(from, to, count);
}

SimulatedNetwork::SimulatedNetwork(int machines, double latency_seconds, double bytes_per_second)
    : machines_(machines), latency_(latency_seconds), bandwidth_(bytes_per_second) {
  if (machines < 1) throw std::invalid_argument("need at least one machine");
  if (latency_seconds < 0 || bytes_per_second <= 0) throw std::invalid_argument("bad network parameters");
}

void SimulatedNetwork::send(int from, int to, std::size_t bytes) {
  if (from == to) return;
  stats_.bytes += static_cast<std::int64_t>(bytes);
  stats_.messages += 1;
  stats_.modeled_seconds += latency_ + static_cast<double>(bytes) / bandwidth_;
}

std::unique_ptr<Transport> make_transport(const TransportConfig& cfg) {
  if (cfg.kind == TransportConfig::Kind::kInProcess) return std::make_unique<InProcessTransport>();
  return std::make_unique<SimulatedNetwork>(cfg.machines, cfg.latency_seconds, cfg.bytes_per_second);
}

}  // namespace dpgc
