// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "frobound/arith/padic.hpp"
#include "frobound/arith/ratfunc.hpp"

namespace frobound {

/// Power series in t modulo (p^Mw, t^K), dense, with a per-coefficient
/// accuracy floor.
class TruncSeries {
 public:
  TruncSeries(RingPtr ring, std::size_t length);
  TruncSeries(RingPtr ring, std::vector<Integer> mantissas, int accuracy);
  TruncSeries(RingPtr ring, std::vector<Integer> mantissas, std::vector<int> accuracy);

  /// Requires p-integral coefficients.
  static TruncSeries from_poly(RingPtr ring, const QPoly& f, std::size_t length);
  static TruncSeries constant(const PAdicApprox& c, std::size_t length);

  const RingPtr& ring() const { return ring_; }
  long prime() const { return ring_->prime(); }
  std::size_t length() const { return c_.size(); }
  const Integer& mantissa(std::size_t i) const { return c_[i]; }
  const std::vector<Integer>& mantissas() const { return c_; }
  int accuracy(std::size_t i) const { return acc_[i]; }
  /// Minimum accuracy over all coefficients.
  int accuracy() const;
  PAdicApprox coefficient(std::size_t i) const { return PAdicApprox(ring_, c_[i], acc_[i]); }
  void set_coefficient(std::size_t i, const PAdicApprox& a);

  bool is_zero() const;
  /// Minimum coefficient valuation.
  Valuation valuation() const;

  TruncSeries operator-() const;
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  TruncSeries& operator+=(const TruncSeries& b) { return *this = *this + b; }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return same_ring(a.ring_, b.ring_) && a.c_ == b.c_ && a.acc_ == b.acc_;
  }

  TruncSeries scaled(const PAdicApprox& s) const;
  /// d/dt; the result has length K-1 (the top coefficient is unknown).
  TruncSeries derivative() const;
  /// Requires a unit constant term.
  TruncSeries unit_inverse() const;
  /// sum a_i t^i -> sum a_i t^(q i), truncated at the same length.
  TruncSeries frobenius_substitute(long q) const;
  TruncSeries frobenius_substitute() const { return frobenius_substitute(prime()); }
  TruncSeries truncated(std::size_t length) const;

  /// (t - z) f
  TruncSeries times_linear(const Integer& z) const;
  /// f / (t - z); z must be a p-adic unit.
  TruncSeries divided_by_linear(const Integer& z) const;

  /// f / q for a series or polynomial q with unit constant term; cost is
  /// proportional to the number of nonzero coefficients of q.
  TruncSeries divided_by(const TruncSeries& q) const;

  TruncSeries divide_by_p_power(int k) const;
  /// Same digits in Z/p^m for m <= accuracy().
  TruncSeries reduce_to(const RingPtr& smaller) const;

 private:
  RingPtr ring_;
  std::vector<Integer> c_;
  std::vector<int> acc_;
};

/// First K Taylor coefficients of f at t = 0, reduced mod p^Mw. Throws when
/// f has a pole at 0 or an expansion coefficient is not p-integral.
TruncSeries ratfunc_to_series(const RatFunc& f, long p, int working_precision, std::size_t length);
TruncSeries ratfunc_to_series(const RatFunc& f, const RingPtr& ring, std::size_t length);

/// Exact Taylor coefficients of num/den^power at t = 0 (den(0) != 0 after
/// removing common factors of t).
std::vector<Rational> exact_series(const QPoly& num, const QPoly& den, unsigned power,
                                   std::size_t length);

}  // namespace frobound
