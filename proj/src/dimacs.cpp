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
#include "dpgc/dimacs.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace dpgc {

DimacsParseError::DimacsParseError(Kind kind, int line, const std::string& what)
    : std::runtime_error("dimacs line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

namespace {

using Kind = DimacsParseError::Kind;

struct RawArc {
  long long u, v;
  std::int64_t cap;
};

bool only_trailing_space(std::istringstream& ss) {
  std::string rest;
  return !(ss >> rest);
}

}  // namespace

FlowGraph read_dimacs(std::istream& in) {
  long long n_nodes = -1;
  long long source = -1;
  long long sink = -1;
  int log2_den = 0;
  std::int64_t acc_num = 0;
  std::vector<RawArc> arcs;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "c") {
      std::string key;
      if (ss >> key) {
        if (key == "log2_denominator") {
          if (!(ss >> log2_den) || log2_den < 0 || log2_den > Capacity::kMaxLog2Denominator) {
            throw DimacsParseError(Kind::kMalformedLine, lineno, "bad log2_denominator");
          }
        } else if (key == "accumulated_flow") {
          if (!(ss >> acc_num)) throw DimacsParseError(Kind::kMalformedLine, lineno, "bad accumulated_flow");
        }
      }
    } else if (tag == "p") {
      std::string kind;
      long long m = -1;
      if (n_nodes >= 0 || !(ss >> kind >> n_nodes >> m) || kind != "max" || n_nodes < 2 || m < 0 ||
          !only_trailing_space(ss)) {
        throw DimacsParseError(Kind::kMalformedHeader, lineno, "expected 'p max <nodes> <arcs>'");
      }
    } else if (tag == "n") {
      if (n_nodes < 0) throw DimacsParseError(Kind::kMalformedHeader, lineno, "node line before problem line");
      long long id;
      std::string role;
      if (!(ss >> id >> role) || (role != "s" && role != "t")) {
        throw DimacsParseError(Kind::kMalformedLine, lineno, "expected 'n <id> s|t'");
      }
      if (id < 1 || id > n_nodes) throw DimacsParseError(Kind::kUndeclaredNode, lineno, "node " + std::to_string(id));
      (role == "s" ? source : sink) = id;
    } else if (tag == "a") {
      if (n_nodes < 0) throw DimacsParseError(Kind::kMalformedHeader, lineno, "arc line before problem line");
      RawArc a;
      if (!(ss >> a.u >> a.v >> a.cap) || !only_trailing_space(ss)) {
        throw DimacsParseError(Kind::kMalformedLine, lineno, "expected 'a <u> <v> <cap>'");
      }
      if (a.u < 1 || a.u > n_nodes || a.v < 1 || a.v > n_nodes) {
        throw DimacsParseError(Kind::kUndeclaredNode, lineno,
                               "arc " + std::to_string(a.u) + " -> " + std::to_string(a.v));
      }
      if (a.cap < 0) throw DimacsParseError(Kind::kNegativeCapacity, lineno, "negative capacity");
      arcs.push_back(a);
    } else {
      throw DimacsParseError(Kind::kMalformedLine, lineno, "unknown line tag '" + tag + "'");
    }
  }
  if (n_nodes < 0) throw DimacsParseError(Kind::kMalformedHeader, lineno, "missing problem line");
  if (source < 0 || sink < 0 || source == sink) {
    throw DimacsParseError(Kind::kMissingTerminal, lineno, "source and sink must both be declared and distinct");
  }

  // Non-terminal node ids in ascending order -> 0..n-1.
  std::vector<int> local(static_cast<std::size_t>(n_nodes + 1), -1);
  int n = 0;
  for (long long id = 1; id <= n_nodes; ++id)
    if (id != source && id != sink) local[id] = n++;

  FlowGraph g(n, log2_den);
  auto raw = [&](std::int64_t num) { return Capacity::fixed(num, log2_den); };
  g.add_accumulated_flow(raw(acc_num));
  for (const RawArc& a : arcs) {
    if (a.u == a.v || a.v == source || a.u == sink || a.cap == 0) continue;
    const Capacity c = raw(a.cap);
    if (a.u == source && a.v == sink) {
      g.add_accumulated_flow(c);
    } else if (a.u == source) {
      g.add_tlinks(local[a.v], c, Capacity{});
    } else if (a.v == sink) {
      g.add_tlinks(local[a.u], Capacity{}, c);
    } else {
      g.add_edge(local[a.u], local[a.v], c);
    }
  }
  return g;
}

FlowGraph read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dimacs(in);
}

void write_dimacs(const FlowGraph& g, std::ostream& out) {
  std::vector<std::string> lines;
  const auto src = g.raw_source();
  const auto snk = g.raw_sink();
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (src[v] > 0) lines.push_back("a 1 " + std::to_string(v + 3) + " " + std::to_string(src[v]));
    if (snk[v] > 0) lines.push_back("a " + std::to_string(v + 3) + " 2 " + std::to_string(snk[v]));
  }
  for (const Arc& a : g.raw_arcs()) {
    if (a.cap[0] > 0) {
      lines.push_back("a " + std::to_string(a.tail + 3) + " " + std::to_string(a.head + 3) + " " +
                      std::to_string(a.cap[0]));
    }
    if (a.cap[1] > 0) {
      lines.push_back("a " + std::to_string(a.head + 3) + " " + std::to_string(a.tail + 3) + " " +
                      std::to_string(a.cap[1]));
    }
  }
  out << "c dpgc flow graph\n";
  out << "p max " << g.num_vertices() + 2 << ' ' << lines.size() << '\n';
  out << "n 1 s\nn 2 t\n";
  if (g.log2_denominator() > 0) out << "c log2_denominator " << g.log2_denominator() << '\n';
  if (g.raw_accumulated_flow() != 0) out << "c accumulated_flow " << g.raw_accumulated_flow() << '\n';
  for (const auto& l : lines) out << l << '\n';
}

}  // namespace dpgc
