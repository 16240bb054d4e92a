// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "frobound/arith/matrix.hpp"

namespace frobound {

/// A rational point of the projective line.
class Point {
 public:
  static Point at(const Rational& z) { return Point(z, false); }
  static Point infinity() { return Point(Rational(0), true); }

  bool is_infinity() const { return inf_; }
  /// Throws for the point at infinity.
  const Rational& value() const;
  std::string str() const;

  friend bool operator==(const Point& a, const Point& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.z_ == b.z_);
  }
  /// Finite points by value, infinity last.
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);

 private:
  Point(Rational z, bool inf) : z_(std::move(z)), inf_(inf) {}
  Rational z_;
  bool inf_;
};

/// Accepts "inf", "infinity" or a rational.
Point parse_point(std::string_view text);

/// A connection d/dt + N on the trivial bundle of rank r, together with the
/// prime p at which it is studied.
class Connection {
 public:
  Connection(long p, RatFuncMatrix N, std::string family = "custom");

  long prime() const { return p_; }
  std::size_t rank() const { return n_.rows(); }
  const RatFuncMatrix& matrix() const { return n_; }
  const std::string& family() const { return family_; }
  /// Poles of N dt on the projective line, sorted (infinity last).
  const std::vector<Point>& singular_points() const { return singular_; }
  bool is_singular(const Point& z) const;
  /// Same matrix, different prime.
  Connection with_prime(long p) const { return Connection(p, n_, family_); }

 private:
  long p_;
  RatFuncMatrix n_;
  std::string family_;
  std::vector<Point> singular_;
};

inline constexpr std::string_view kEllipticFamily = "elliptic-example";

/// Gauss-Manin connection of y^2 = x^3 + 1 + (t+1)(x^2 + x) on the basis
/// [dx/y, x dx/y].
RatFuncMatrix elliptic_example_matrix();
Connection elliptic_example(long p);

/// Text format: '#' starts a comment; the first two integers are r and p;
/// the r*r entries follow row by row, separated by newlines or ';'.
Connection parse_connection(std::string_view text, std::string family = "custom");
Connection connection_from_file(const std::string& path);
/// Builtin identifier or a file path; p <= 0 keeps the prime from the file.
Connection load_family(const std::string& family, long p);

}  // namespace frobound
