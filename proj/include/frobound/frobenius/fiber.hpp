// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "frobound/arith/matrix.hpp"

namespace frobound {

/// The elliptic curve y^2 = Q(x) with Q a cubic over Z, studied at p.
struct FiberCurve {
  /// Coefficients of Q, constant term first.
  std::vector<Integer> q;
  long p = 3;
  /// Target accuracy of the Frobenius matrix.
  int M = 6;

  QPoly poly() const;
  Integer discriminant() const;
  /// Throws UnsupportedInput unless Q is a cubic, p is an odd prime and p
  /// divides neither the leading coefficient nor the discriminant.
  void validate() const;
};

/// Fiber of y^2 = x^3 + 1 + (t+1)(x^2 + x) at an integer t.
FiberCurve elliptic_example_fiber(const Integer& t, long p, int M);

struct FiberFrobenius {
  /// Matrix of Frobenius on [dx/y, x dx/y] (columns are images), mod p^M.
  PAdicMatrix phi0;
  /// Number of terms of the binomial series that were kept.
  int series_terms = 0;
  /// Trace lifted to (-p^M/2, p^M/2].
  Integer a_p;
};

/// Kedlaya-style computation in exact rational arithmetic: expand the
/// Frobenius image of x^i dx/y as a series in 1/y, truncated where the
/// remaining terms vanish mod p^M, and reduce with the cohomology relations.
/// Checks det = p and the Hasse bound on the trace.
FiberFrobenius kedlaya_fiber_matrix(const FiberCurve& curve);

/// Terms k >= result of the series are 0 mod p^M after reduction.
int kedlaya_series_terms(long p, int M);

}  // namespace frobound
