// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "frobound/arith/rational.hpp"

namespace frobound {

/// Z / p^Mw, shared by every scalar and series computed at one working
/// precision.
class PAdicRing {
 public:
  PAdicRing(long p, int working_precision);

  long prime() const { return p_; }
  int precision() const { return precision_; }
  const Integer& modulus() const { return powers_.back(); }
  /// p^e for 0 <= e <= Mw.
  const Integer& power(int e) const { return powers_.at(static_cast<std::size_t>(e)); }

  /// Reduces a p-integral rational into [0, p^Mw).
  Integer reduce(const Rational& q) const;
  Integer reduce(const Integer& n) const;

  bool operator==(const PAdicRing& o) const {
    return p_ == o.p_ && precision_ == o.precision_;
  }

 private:
  long p_;
  int precision_;
  std::vector<Integer> powers_;
};

using RingPtr = std::shared_ptr<const PAdicRing>;

RingPtr make_ring(long p, int working_precision);
bool same_ring(const RingPtr& a, const RingPtr& b);

/// An element of Z/p^Mw whose digits below `accuracy()` are guaranteed.
///
/// Add, subtract and multiply give accuracy min(acc_a, acc_b); dividing by
/// p^k lowers it by exactly k. A zero mantissa means "zero modulo p^Mw",
/// never an exact zero.
class PAdicApprox {
 public:
  PAdicApprox(RingPtr ring, Integer mantissa, int accuracy);

  static PAdicApprox zero(RingPtr ring);
  static PAdicApprox one(RingPtr ring);
  static PAdicApprox from_integer(RingPtr ring, const Integer& n);
  /// Requires v_p(q) >= 0; the result is exact to the working precision.
  static PAdicApprox from_rational(RingPtr ring, const Rational& q);

  const RingPtr& ring() const { return ring_; }
  long prime() const { return ring_->prime(); }
  const Integer& mantissa() const { return mantissa_; }
  int accuracy() const { return accuracy_; }

  /// min(v_p(mantissa), Mw); flagged as a lower bound when the mantissa is 0.
  Valuation valuation() const;

  PAdicApprox operator-() const;
  friend PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b);
  friend PAdicApprox operator-(const PAdicApprox& a, const PAdicApprox& b);
  friend PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b);

  /// Inverse of a unit (v_p = 0); throws ArithmeticError otherwise.
  PAdicApprox unit_inverse() const;
  /// Exact division by p^k; needs v_p >= k and accuracy >= k.
  PAdicApprox divide_by_p_power(int k) const;
  PAdicApprox multiply_by_p_power(int k) const;

  /// True when a and b agree modulo p^k (k at most both accuracies).
  bool congruent(const PAdicApprox& other, int k) const;

 private:
  RingPtr ring_;
  Integer mantissa_;
  int accuracy_;
};

}  // namespace frobound
