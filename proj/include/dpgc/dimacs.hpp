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

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dpgc/flow_graph.hpp"

namespace dpgc {

class DimacsParseError : public std::runtime_error {
 public:
  enum class Kind { kMalformedHeader, kMalformedLine, kUndeclaredNode, kNegativeCapacity, kMissingTerminal };

  DimacsParseError(Kind kind, int line, const std::string& what);

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

/// Reads a DIMACS max-flow problem ("p max", "n <id> s|t", "a <u> <v> <cap>").
///
/// Arcs from s become source links, arcs into t become sink links, s->t arcs
/// go to accumulated_flow. Arcs into s, out of t, and self-loops are dropped.
/// Parallel arcs are summed. The remaining node ids map to vertices 0..n-1
/// in ascending order. Optional comment lines "c log2_denominator <k>" and
/// "c accumulated_flow <numerator>" (as emitted by write_dimacs) make
/// fixed-point graphs round-trip exactly.
FlowGraph read_dimacs(std::istream& in);
FlowGraph read_dimacs_file(const std::string& path);

/// Writes s = 1, t = 2, vertex v = v + 3. Capacities are numerators over
/// 2^log2_denominator(). Zero-capacity arcs are omitted.
void write_dimacs(const FlowGraph& g, std::ostream& out);

}  // namespace dpgc
