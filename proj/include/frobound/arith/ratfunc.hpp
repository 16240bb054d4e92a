// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "frobound/arith/poly.hpp"

namespace frobound {

/// num/den over Q in lowest terms with monic denominator, so "has a pole at
/// z" reduces to den(z) = 0.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(QPoly numerator);  // NOLINT: polynomials are rational functions
  RatFunc(const Rational& c) : RatFunc(QPoly(c)) {}  // NOLINT
  RatFunc(long c) : RatFunc(QPoly(c)) {}             // NOLINT
  RatFunc(QPoly numerator, QPoly denominator);

  const QPoly& numerator() const { return num_; }
  const QPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc derivative() const;
  bool has_pole_at(const Rational& z) const { return den_.evaluate(z) == 0; }
  /// Exact value; throws ArithmeticError at a pole.
  Rational evaluate(const Rational& z) const;
  /// ord_z: multiplicity in the numerator minus in the denominator.
  Valuation order_at(const Rational& z) const;
  /// deg(den) - deg(num).
  Valuation order_at_infinity() const;
  /// this(inner(t)) for a polynomial substitution.
  RatFunc compose(const QPoly& inner) const;
  RatFunc pow(int e) const;
  /// Gauss valuation v(num) - v(den).
  Valuation gauss_valuation(long p) const;

  std::string str() const;

 private:
  void normalize();
  QPoly num_;
  QPoly den_;
};

/// Parses expressions in t built from integers, t, + - * / ^ (integer
/// exponents) and parentheses, e.g. "(-t-1)/(2*t^2-8)".
RatFunc parse_ratfunc(std::string_view text);

}  // namespace frobound
