// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "frobound/arith/rational.hpp"

namespace frobound {

/// Dense univariate polynomial over Q, coefficients stored low degree first
/// with no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coefficients);
  QPoly(const Rational& constant);  // NOLINT: implicit on purpose
  QPoly(long constant) : QPoly(Rational(constant)) {}  // NOLINT

  static QPoly monomial(const Rational& c, std::size_t degree);
  /// The coordinate t.
  static QPoly t();
  /// t - z
  static QPoly linear(const Rational& z);

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of t^i (zero past the degree).
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const std::vector<Rational>& coefficients() const { return c_; }
  const Rational& leading() const;

  QPoly operator-() const;
  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly& operator+=(const QPoly& b) { return *this = *this + b; }
  QPoly& operator-=(const QPoly& b) { return *this = *this - b; }
  QPoly& operator*=(const QPoly& b) { return *this = *this * b; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  QPoly scaled(const Rational& s) const;
  QPoly derivative() const;
  Rational evaluate(const Rational& x) const;
  /// this(inner(t)).
  QPoly compose(const QPoly& inner) const;
  QPoly pow(unsigned e) const;
  QPoly monic() const;
  /// Coefficients reversed with respect to `as_degree` (>= degree()).
  QPoly reversed(std::size_t as_degree) const;

  /// Multiplicity of the root z (0 if z is not a root); the zero polynomial
  /// is a programming error here.
  int root_multiplicity(const Rational& z) const;

  /// Minimum coefficient valuation (the Gauss valuation).
  Valuation gauss_valuation(long p) const;

  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; b must be nonzero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// Monic gcd (zero if both are zero).
QPoly gcd(const QPoly& a, const QPoly& b);
/// Monic lcm of nonzero polynomials.
QPoly lcm(const QPoly& a, const QPoly& b);
/// s, u with s*a + u*b = gcd(a, b).
std::pair<QPoly, QPoly> bezout(const QPoly& a, const QPoly& b);

/// Rational roots with multiplicity, plus the monic cofactor free of rational
/// roots. Candidates come from the rational-root theorem; coefficients whose
/// size defeats trial factoring raise UnsupportedInput.
struct RationalRoots {
  std::vector<std::pair<Rational, int>> roots;
  QPoly cofactor;
};
RationalRoots rational_roots(const QPoly& f);

}  // namespace frobound
