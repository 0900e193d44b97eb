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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace dpgc {

/// Exact signed fixed-point value: numerator / 2^log2_denominator.
///
/// Values are kept normalized (odd numerator, or log2_denominator == 0), so
/// structural equality is value equality. Every operation is exact; an
/// operation that would overflow 64 bits throws std::overflow_error.
class Capacity {
 public:
  static constexpr int kMaxLog2Denominator = 62;

  constexpr Capacity() = default;
  constexpr Capacity(std::int64_t integer) : num_(integer) {}  // NOLINT(implicit)

  /// numerator / 2^log2_denominator, normalized.
  static Capacity fixed(std::int64_t numerator, int log2_denominator);

  /// Nearest fixed-point value with the given number of fraction bits
  /// (round half away from zero).
  static Capacity round_from(double value, int fraction_bits);

  std::int64_t numerator() const { return num_; }
  int log2_denominator() const { return shift_; }

  /// Numerator expressed at a denominator of 2^log2_denominator.
  /// Throws std::domain_error if the value is not representable there.
  std::int64_t numerator_at(int log2_denominator) const;

  Capacity halved() const;
  Capacity doubled() const;

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  double to_double() const;

  /// Exact decimal rendering ("12", "-0.375"). Power-of-two denominators
  /// always have a finite decimal expansion.
  std::string to_string() const;

  friend Capacity operator+(const Capacity& a, const Capacity& b);
  friend Capacity operator-(const Capacity& a, const Capacity& b);
  friend Capacity operator-(const Capacity& a);
  Capacity& operator+=(const Capacity& o) { return *this = *this + o; }
  Capacity& operator-=(const Capacity& o) { return *this = *this - o; }

  friend bool operator==(const Capacity&, const Capacity&) = default;
  friend std::strong_ordering operator<=>(const Capacity& a, const Capacity& b);

 private:
  std::int64_t num_ = 0;
  int shift_ = 0;
};

Capacity min(const Capacity& a, const Capacity& b);
Capacity max(const Capacity& a, const Capacity& b);

std::ostream& operator<<(std::ostream& os, const Capacity& c);

namespace detail {
/// value * 2^bits with overflow check.
std::int64_t shl_checked(std::int64_t value, int bits);
std::int64_t add_checked(std::int64_t a, std::int64_t b);
std::int64_t sub_checked(std::int64_t a, std::int64_t b);
}  // namespace detail

}  // namespace dpgc
