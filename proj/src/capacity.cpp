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
#include "dpgc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dpgc {

namespace detail {

std::int64_t shl_checked(std::int64_t value, int bits) {
  if (bits < 0) throw std::invalid_argument("negative shift");
  if (value == 0 || bits == 0) return value;
  if (bits >= 63) throw std::overflow_error("fixed-point rescale overflows int64");
  const std::int64_t limit = std::numeric_limits<std::int64_t>::max() >> bits;
  if (value > limit || value < -limit) {
    throw std::overflow_error("fixed-point rescale overflows int64");
  }
  return value * (std::int64_t{1} << bits);
}

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("fixed-point add overflows int64");
  return r;
}

std::int64_t sub_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("fixed-point sub overflows int64");
  return r;
}

}  // namespace detail

Capacity Capacity::fixed(std::int64_t numerator, int log2_denominator) {
  if (log2_denominator < 0 || log2_denominator > kMaxLog2Denominator) {
    throw std::out_of_range("log2_denominator out of range");
  }
  Capacity c;
  c.num_ = numerator;
  c.shift_ = numerator == 0 ? 0 : log2_denominator;
  while (c.shift_ > 0 && (c.num_ & 1) == 0) {
    c.num_ /= 2;
    --c.shift_;
  }
  return c;
}

Capacity Capacity::round_from(double value, int fraction_bits) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite capacity");
  const double scaled = std::ldexp(value, fraction_bits);
  if (std::fabs(scaled) >= 9.0e18) throw std::overflow_error("capacity too large for fixed point");
  return fixed(static_cast<std::int64_t>(std::llround(scaled)), fraction_bits);
}

std::int64_t Capacity::numerator_at(int log2_denominator) const {
  if (log2_denominator < shift_) {
    throw std::domain_error("value not representable at the requested denominator");
  }
  return detail::shl_checked(num_, log2_denominator - shift_);
}

Capacity Capacity::halved() const {
  if (num_ % 2 == 0) return fixed(num_ / 2, shift_);
  if (shift_ >= kMaxLog2Denominator) throw std::overflow_error("fixed-point denominator overflow");
  Capacity c;
  c.num_ = num_;
  c.shift_ = shift_ + 1;
  return c;
}

Capacity Capacity::doubled() const {
  if (shift_ > 0) return fixed(num_, shift_ - 1);
  return Capacity(detail::shl_checked(num_, 1));
}

double Capacity::to_double() const { return std::ldexp(static_cast<double>(num_), -shift_); }

std::string Capacity::to_string() const {
  const bool neg = num_ < 0;
  // |num| fits in uint64 even for INT64_MIN.
  const std::uint64_t mag = neg ? ~static_cast<std::uint64_t>(num_) + 1 : static_cast<std::uint64_t>(num_);
  std::uint64_t integer = shift_ >= 64 ? 0 : mag >> shift_;
  std::uint64_t frac = shift_ == 0 ? 0 : mag & ((std::uint64_t{1} << shift_) - 1);
  std::string out = neg ? "-" : "";
  out += std::to_string(integer);
  if (frac != 0) {
    out += '.';
    // frac / 2^shift: multiply by 10 repeatedly; terminates after `shift_` digits.
    // Use 128-bit so frac * 10 cannot overflow.
    unsigned __int128 f = frac;
    const unsigned __int128 one = static_cast<unsigned __int128>(1) << shift_;
    while (f != 0) {
      f *= 10;
      out += static_cast<char>('0' + static_cast<int>(f / one));
      f %= one;
    }
  }
  return out;
}

Capacity operator+(const Capacity& a, const Capacity& b) {
  const int s = std::max(a.shift_, b.shift_);
  return Capacity::fixed(detail::add_checked(a.numerator_at(s), b.numerator_at(s)), s);
}

Capacity operator-(const Capacity& a, const Capacity& b) {
  const int s = std::max(a.shift_, b.shift_);
  return Capacity::fixed(detail::sub_checked(a.numerator_at(s), b.numerator_at(s)), s);
}

Capacity operator-(const Capacity& a) { return Capacity::fixed(detail::sub_checked(0, a.num_), a.shift_); }

std::strong_ordering operator<=>(const Capacity& a, const Capacity& b) {
  const int s = std::max(a.shift_, b.shift_);
  return a.numerator_at(s) <=> b.numerator_at(s);
}

Capacity min(const Capacity& a, const Capacity& b) { return b < a ? b : a; }
Capacity max(const Capacity& a, const Capacity& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Capacity& c) { return os << c.to_string(); }

}  // namespace dpgc
