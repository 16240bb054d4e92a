// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <limits>
#include <string>
#include <string_view>

namespace frobound {

using Integer = mpz_class;
using Rational = mpq_class;

/// A p-adic valuation together with how much is known about it.
///
/// `exact(v)` is a genuine valuation. `at_least(v)` arises from an element
/// that is zero modulo p^v (nothing more is known). `infinite()` is the
/// valuation of an exact zero.
class Valuation {
 public:
  static constexpr long kInfinity = std::numeric_limits<long>::max() / 4;

  static Valuation exact(long v) { return Valuation(v, false); }
  static Valuation at_least(long v) { return Valuation(v, true); }
  static Valuation infinite() { return Valuation(kInfinity, true); }

  long value() const { return value_; }
  bool is_lower_bound() const { return lower_bound_; }
  bool is_infinite() const { return value_ >= kInfinity; }

  /// "3", ">=4" or "inf".
  std::string str() const;

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.value_ == b.value_ && a.lower_bound_ == b.lower_bound_;
  }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    return a.value_ <=> b.value_;
  }

 private:
  Valuation(long v, bool lb) : value_(v), lower_bound_(lb) {}
  long value_;
  bool lower_bound_;
};

/// Smaller of two valuations (ties keep the exact one).
Valuation min(const Valuation& a, const Valuation& b);

Valuation val_p(const Integer& n, long p);
/// Exact p-adic valuation of a rational; negative when p divides the
/// denominator, infinite for zero.
Valuation val_p(const Rational& q, long p);

Integer ipow(long base, unsigned long e);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Largest k with p^k <= n (n >= 1), by repeated division.
int floor_log(long p, const Integer& n);
/// Smallest k with p^k >= n (n >= 1).
int ceil_log(long p, const Integer& n);

bool is_prime(long n);

std::string to_string(const Rational& q);
/// Parses "a", "-a", "a/b".
Rational parse_rational(std::string_view text);

}  // namespace frobound
