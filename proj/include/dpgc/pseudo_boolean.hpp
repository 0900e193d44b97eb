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
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dpgc/capacity.hpp"
#include "dpgc/flow_graph.hpp"

namespace dpgc {

using VertexPair = std::pair<int, int>;

/// Restricted homogeneous posiform
///   sum_i a_src[i] x_i + sum_i a_snk[i] ~x_i + sum_(i,j) a_pair[(i,j)] ~x_i x_j
/// plus a constant carried alongside (the accumulated flow).
/// a_pair is keyed by ordered pair and holds only non-zero entries.
struct Posiform {
  std::vector<Capacity> a_src;
  std::vector<Capacity> a_snk;
  std::map<VertexPair, Capacity> a_pair;
  Capacity constant;

  int num_vertices() const { return static_cast<int>(a_src.size()); }
  friend bool operator==(const Posiform&, const Posiform&) = default;
};

/// l0 + sum_i l1[i] x_i + sum_{i<j} l2[(i,j)] x_i x_j.
/// l2 is keyed by (i, j) with i < j and holds only non-zero entries, so
/// defaulted equality is coefficient equality.
struct MultilinearPolynomial {
  Capacity l0;
  std::vector<Capacity> l1;
  std::map<VertexPair, Capacity> l2;

  MultilinearPolynomial() = default;
  explicit MultilinearPolynomial(int n) : l1(static_cast<std::size_t>(n)) {}

  int num_vertices() const { return static_cast<int>(l1.size()); }
  Capacity quadratic(int i, int j) const;
  void add_quadratic(int i, int j, Capacity c);

  MultilinearPolynomial& operator+=(const MultilinearPolynomial& o);
  MultilinearPolynomial& operator-=(const MultilinearPolynomial& o);
  friend MultilinearPolynomial operator+(MultilinearPolynomial a, const MultilinearPolynomial& b) { return a += b; }
  friend MultilinearPolynomial operator-(MultilinearPolynomial a, const MultilinearPolynomial& b) { return a -= b; }
  friend bool operator==(const MultilinearPolynomial&, const MultilinearPolynomial&) = default;
};

Posiform posiform_of(const FlowGraph& g);
/// Throws std::invalid_argument on a negative coefficient.
FlowGraph graph_of(const Posiform& p);
MultilinearPolynomial polynomial_of(const Posiform& p);
/// polynomial_of(posiform_of(g)), constant included.
MultilinearPolynomial polynomial_of(const FlowGraph& g);

/// Renames vertex i of `f` to global_of_local[i] in an n_global-vertex polynomial.
MultilinearPolynomial lift(const MultilinearPolynomial& f, std::span<const int> global_of_local, int n_global);

/// Throws std::invalid_argument on a length mismatch.
Capacity evaluate(const MultilinearPolynomial& f, const Assignment& x);
Capacity evaluate(const Posiform& p, const Assignment& x);

struct BruteForceResult {
  Capacity min_value;
  std::vector<Assignment> argmins;  // lexicographic order
};

constexpr int kBruteForceMaxVertices = 24;

/// Exhaustive minimum over all 2^n assignments. Throws std::length_error when
/// n > kBruteForceMaxVertices.
BruteForceResult brute_force_min(const MultilinearPolynomial& f);

/// f.l0 - g.l0 when every linear and quadratic coefficient matches exactly.
std::optional<Capacity> poly_equal_up_to_constant(const MultilinearPolynomial& f, const MultilinearPolynomial& g);

/// Stable text dumps ordered by vertex id, e.g. "8 - 4 x0 + 3 x1 - 3 x0 x1".
std::ostream& operator<<(std::ostream& os, const MultilinearPolynomial& f);
std::ostream& operator<<(std::ostream& os, const Posiform& p);

}  // namespace dpgc
