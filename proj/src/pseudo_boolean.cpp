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
#include "dpgc/pseudo_boolean.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dpgc {

namespace {

VertexPair unordered(int i, int j) { return i < j ? VertexPair{i, j} : VertexPair{j, i}; }

void check_same_size(int a, int b) {
  if (a != b) throw std::invalid_argument("polynomials over different vertex sets");
}

}  // namespace

Capacity MultilinearPolynomial::quadratic(int i, int j) const {
  auto it = l2.find(unordered(i, j));
  return it == l2.end() ? Capacity{} : it->second;
}

void MultilinearPolynomial::add_quadratic(int i, int j, Capacity c) {
  if (i == j) throw std::invalid_argument("quadratic term on a single variable");
  if (c.is_zero()) return;
  auto key = unordered(i, j);
  auto [it, inserted] = l2.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) l2.erase(it);
  }
}

MultilinearPolynomial& MultilinearPolynomial::operator+=(const MultilinearPolynomial& o) {
  check_same_size(num_vertices(), o.num_vertices());
  l0 += o.l0;
  for (std::size_t i = 0; i < l1.size(); ++i) l1[i] += o.l1[i];
  for (const auto& [key, c] : o.l2) add_quadratic(key.first, key.second, c);
  return *this;
}

MultilinearPolynomial& MultilinearPolynomial::operator-=(const MultilinearPolynomial& o) {
  check_same_size(num_vertices(), o.num_vertices());
  l0 -= o.l0;
  for (std::size_t i = 0; i < l1.size(); ++i) l1[i] -= o.l1[i];
  for (const auto& [key, c] : o.l2) add_quadratic(key.first, key.second, -c);
  return *this;
}

Posiform posiform_of(const FlowGraph& g) {
  Posiform p;
  const int n = g.num_vertices();
  p.a_src.resize(n);
  p.a_snk.resize(n);
  for (int v = 0; v < n; ++v) {
    p.a_src[v] = g.source_cap(v);
    p.a_snk[v] = g.sink_cap(v);
  }
  for (int a = 0; a < g.num_arcs(); ++a) {
    const Arc& arc = g.arc(a);
    if (arc.cap[0] != 0) p.a_pair[{arc.tail, arc.head}] = g.arc_forward(a);
    if (arc.cap[1] != 0) p.a_pair[{arc.head, arc.tail}] = g.arc_backward(a);
  }
  p.constant = g.accumulated_flow();
  return p;
}

FlowGraph graph_of(const Posiform& p) {
  const int n = p.num_vertices();
  if (static_cast<int>(p.a_snk.size()) != n) throw std::invalid_argument("posiform coefficient arrays differ in length");
  FlowGraph g(n);
  for (int v = 0; v < n; ++v) {
    if (p.a_src[v].is_negative() || p.a_snk[v].is_negative()) {
      throw std::invalid_argument("negative posiform coefficient at vertex " + std::to_string(v));
    }
    g.set_source_cap(v, p.a_src[v]);
    g.set_sink_cap(v, p.a_snk[v]);
  }
  for (const auto& [key, c] : p.a_pair) {
    if (c.is_negative()) {
      throw std::invalid_argument("negative posiform coefficient on pair (" + std::to_string(key.first) + ", " +
                                  std::to_string(key.second) + ")");
    }
    if (c.is_positive()) g.add_edge(key.first, key.second, c);
  }
  g.add_accumulated_flow(p.constant);
  return g;
}

MultilinearPolynomial polynomial_of(const Posiform& p) {
  const int n = p.num_vertices();
  MultilinearPolynomial f(n);
  f.l0 = p.constant;
  for (int i = 0; i < n; ++i) {
    f.l0 += p.a_snk[i];
    f.l1[i] = p.a_src[i] - p.a_snk[i];
  }
  // ~x_i x_j = x_j - x_i x_j
  for (const auto& [key, c] : p.a_pair) {
    f.l1[key.second] += c;
    f.add_quadratic(key.first, key.second, -c);
  }
  return f;
}

MultilinearPolynomial polynomial_of(const FlowGraph& g) { return polynomial_of(posiform_of(g)); }

MultilinearPolynomial lift(const MultilinearPolynomial& f, std::span<const int> global_of_local, int n_global) {
  if (static_cast<int>(global_of_local.size()) != f.num_vertices()) {
    throw std::invalid_argument("vertex map length differs from polynomial size");
  }
  MultilinearPolynomial out(n_global);
  out.l0 = f.l0;
  for (int i = 0; i < f.num_vertices(); ++i) out.l1.at(global_of_local[i]) += f.l1[i];
  for (const auto& [key, c] : f.l2) out.add_quadratic(global_of_local[key.first], global_of_local[key.second], c);
  return out;
}

Capacity evaluate(const MultilinearPolynomial& f, const Assignment& x) {
  if (static_cast<int>(x.size()) != f.num_vertices()) throw std::invalid_argument("assignment length mismatch");
  Capacity v = f.l0;
  for (int i = 0; i < f.num_vertices(); ++i)
    if (x[i]) v += f.l1[i];
  for (const auto& [key, c] : f.l2)
    if (x[key.first] && x[key.second]) v += c;
  return v;
}

Capacity evaluate(const Posiform& p, const Assignment& x) {
  if (static_cast<int>(x.size()) != p.num_vertices()) throw std::invalid_argument("assignment length mismatch");
  Capacity v = p.constant;
  for (int i = 0; i < p.num_vertices(); ++i) v += x[i] ? p.a_src[i] : p.a_snk[i];
  for (const auto& [key, c] : p.a_pair)
    if (!x[key.first] && x[key.second]) v += c;
  return v;
}

BruteForceResult brute_force_min(const MultilinearPolynomial& f) {
  const int n = f.num_vertices();
  if (n > kBruteForceMaxVertices) throw std::length_error("brute_force_min: too many vertices");

  int den = f.l0.log2_denominator();
  for (const auto& c : f.l1) den = std::max(den, c.log2_denominator());
  for (const auto& [key, c] : f.l2) den = std::max(den, c.log2_denominator());

  std::vector<std::int64_t> lin(n);
  for (int i = 0; i < n; ++i) lin[i] = f.l1[i].numerator_at(den);
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj(n);
  for (const auto& [key, c] : f.l2) {
    const std::int64_t q = c.numerator_at(den);
    adj[key.first].emplace_back(key.second, q);
    adj[key.second].emplace_back(key.first, q);
  }

  // Gray-code walk: one variable flips per step.
  std::int64_t value = f.l0.numerator_at(den);
  std::int64_t best = value;
  std::vector<std::uint32_t> best_codes{0};
  std::uint32_t code = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int i = std::countr_zero(k);
    std::int64_t d = lin[i];
    for (const auto& [j, q] : adj[i])
      if ((code >> j) & 1U) d = detail::add_checked(d, q);
    const bool was_set = (code >> i) & 1U;
    value = was_set ? detail::sub_checked(value, d) : detail::add_checked(value, d);
    code ^= 1U << i;
    if (value < best) {
      best = value;
      best_codes.assign(1, code);
    } else if (value == best) {
      best_codes.push_back(code);
    }
  }

  BruteForceResult r;
  r.min_value = Capacity::fixed(best, den);
  r.argmins.reserve(best_codes.size());
  for (std::uint32_t c : best_codes) {
    Assignment x(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((c >> i) & 1U);
    r.argmins.push_back(std::move(x));
  }
  std::sort(r.argmins.begin(), r.argmins.end());
  return r;
}

std::optional<Capacity> poly_equal_up_to_constant(const MultilinearPolynomial& f, const MultilinearPolynomial& g) {
  if (f.l1 != g.l1 || f.l2 != g.l2) return std::nullopt;
  return f.l0 - g.l0;
}

namespace {

void put_term(std::ostream& os, bool& first, const Capacity& c, const std::string& vars) {
  if (c.is_zero()) return;
  const Capacity mag = c.is_negative() ? -c : c;
  if (first) {
    if (c.is_negative()) os << '-';
  } else {
    os << (c.is_negative() ? " - " : " + ");
  }
  first = false;
  if (vars.empty() || mag != Capacity(1)) {
    os << mag;
    if (!vars.empty()) os << ' ';
  }
  os << vars;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const MultilinearPolynomial& f) {
  bool first = true;
  put_term(os, first, f.l0, "");
  for (int i = 0; i < f.num_vertices(); ++i) put_term(os, first, f.l1[i], "x" + std::to_string(i));
  for (const auto& [key, c] : f.l2) {
    put_term(os, first, c, "x" + std::to_string(key.first) + " x" + std::to_string(key.second));
  }
  if (first) os << '0';
  return os;
}

std::ostream& operator<<(std::ostream& os, const Posiform& p) {
  bool first = true;
  put_term(os, first, p.constant, "");
  for (int i = 0; i < p.num_vertices(); ++i) {
    put_term(os, first, p.a_src[i], "x" + std::to_string(i));
    put_term(os, first, p.a_snk[i], "~x" + std::to_string(i));
  }
  for (const auto& [key, c] : p.a_pair) {
    put_term(os, first, c, "~x" + std::to_string(key.first) + " x" + std::to_string(key.second));
  }
  if (first) os << '0';
  return os;
}

}  // namespace dpgc
