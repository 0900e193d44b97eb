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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dpgc/flow_graph.hpp"
#include "dpgc/partition.hpp"

namespace dpgc {

std::vector<std::uint8_t> serialize_graph(const FlowGraph& g);
FlowGraph deserialize_graph(std::span<const std::uint8_t> bytes);

/// Graph plus its global vertex map.
std::vector<std::uint8_t> serialize_part(const Part& p);
void deserialize_part(std::span<const std::uint8_t> bytes, Part& into);
std::size_t serialized_size(const Part& p);

struct TransportStats {
  std::int64_t bytes = 0;
  std::int64_t messages = 0;
  double modeled_seconds = 0.0;
  friend bool operator==(const TransportStats&, const TransportStats&) = default;
};

/// Moves payloads between machines and accounts for their cost. Delivery is
/// immediate, reliable and ordered; only the counters model the network.
class Transport {
 public:
  virtual ~Transport() = default;

  virtual int machines() const = 0;
  /// Records one message. Same-machine messages are free.
  virtual void send(int from, int to, std::size_t bytes) = 0;

  int machine_of_part(int k, int n_parts) const;
  /// Ships a part to another machine: serialize, charge, deserialize.
  void transfer_part(Part& p, int to);
  /// Ships the subgraph of `p` induced on `vertices` (global ids).
  void transfer_band(const Part& p, std::span<const int> vertices, int to);
  /// One byte per label.
  void exchange_labels(int from, int to, std::size_t count);

  const TransportStats& stats() const { return stats_; }

 protected:
  TransportStats stats_;
};

class InProcessTransport : public Transport {
 public:
  int machines() const override { return 1; }
  void send(int, int, std::size_t) override {}
};

/// Cost model: every cross-machine message costs latency + bytes / bandwidth.
class SimulatedNetwork : public Transport {
 public:
  SimulatedNetwork(int machines, double latency_seconds, double bytes_per_second);
  int machines() const override { return machines_; }
  void send(int from, int to, std::size_t bytes) override;

 private:
  int machines_;
  double latency_;
  double bandwidth_;
};

struct TransportConfig {
  enum class Kind { kInProcess, kSimulated };
  Kind kind = Kind::kInProcess;
  int machines = 4;
  double latency_seconds = 50e-6;
  double bytes_per_second = 1.25e9;
};

std::unique_ptr<Transport> make_transport(const TransportConfig& cfg);

}  // namespace dpgc
