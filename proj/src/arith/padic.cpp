// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/arith/padic.hpp"

#include <algorithm>

#include "frobound/errors.hpp"

namespace frobound {

PAdicRing::PAdicRing(long p, int working_precision) : p_(p), precision_(working_precision) {
  if (p < 2) throw ArithmeticError("PAdicRing: p must be a prime >= 2");
  if (working_precision < 1) throw ArithmeticError("PAdicRing: precision must be positive");
  powers_.reserve(static_cast<std::size_t>(working_precision) + 1);
  powers_.emplace_back(1);
  for (int e = 1; e <= working_precision; ++e) powers_.push_back(powers_.back() * p);
}

Integer PAdicRing::reduce(const Integer& n) const {
  Integer r;
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), modulus().get_mpz_t());
  return r;
}

Integer PAdicRing::reduce(const Rational& q) const {
  Integer den = q.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus().get_mpz_t()) == 0)
    throw ArithmeticError("reduce: denominator " + den.get_str() + " is divisible by p");
  return reduce(Integer(q.get_num() * inv));
}

RingPtr make_ring(long p, int working_precision) {
  return std::make_shared<const PAdicRing>(p, working_precision);
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

namespace {

void require_same(const PAdicApprox& a, const PAdicApprox& b) {
  if (!same_ring(a.ring(), b.ring()))
    throw ArithmeticError("p-adic operands live in different rings");
}

}  // namespace

PAdicApprox::PAdicApprox(RingPtr ring, Integer mantissa, int accuracy)
    : ring_(std::move(ring)), mantissa_(std::move(mantissa)), accuracy_(accuracy) {
  if (accuracy_ < 0 || accuracy_ > ring_->precision())
    throw ArithmeticError("PAdicApprox: accuracy outside [0, Mw]");
  if (mantissa_ < 0 || mantissa_ >= ring_->modulus()) mantissa_ = ring_->reduce(mantissa_);
}

PAdicApprox PAdicApprox::zero(RingPtr ring) {
  int prec = ring->precision();
  return PAdicApprox(std::move(ring), 0, prec);
}

PAdicApprox PAdicApprox::one(RingPtr ring) {
  int prec = ring->precision();
  return PAdicApprox(std::move(ring), 1, prec);
}

PAdicApprox PAdicApprox::from_integer(RingPtr ring, const Integer& n) {
  Integer m = ring->reduce(n);
  int prec = ring->precision();
  return PAdicApprox(std::move(ring), std::move(m), prec);
}

PAdicApprox PAdicApprox::from_rational(RingPtr ring, const Rational& q) {
  Integer m = ring->reduce(q);
  int prec = ring->precision();
  return PAdicApprox(std::move(ring), std::move(m), prec);
}

Valuation PAdicApprox::valuation() const {
  if (mantissa_ == 0) return Valuation::at_least(ring_->precision());
  return Valuation::exact(std::min<long>(val_p(mantissa_, prime()).value(), ring_->precision()));
}

PAdicApprox PAdicApprox::operator-() const {
  return PAdicApprox(ring_, mantissa_ == 0 ? Integer(0) : Integer(ring_->modulus() - mantissa_),
                     accuracy_);
}

PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b) {
  require_same(a, b);
  Integer s = a.mantissa_ + b.mantissa_;
  if (s >= a.ring_->modulus()) s -= a.ring_->modulus();
  return PAdicApprox(a.ring_, std::move(s), std::min(a.accuracy_, b.accuracy_));
}

PAdicApprox operator-(const PAdicApprox& a, const PAdicApprox& b) {
  require_same(a, b);
  Integer s = a.mantissa_ - b.mantissa_;
  if (s < 0) s += a.ring_->modulus();
  return PAdicApprox(a.ring_, std::move(s), std::min(a.accuracy_, b.accuracy_));
}

PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b) {
  require_same(a, b);
  return PAdicApprox(a.ring_, a.ring_->reduce(Integer(a.mantissa_ * b.mantissa_)),
                     std::min(a.accuracy_, b.accuracy_));
}

PAdicApprox PAdicApprox::unit_inverse() const {
  if (mantissa_ % prime() == 0)
    throw ArithmeticError("unit_inverse: element is not a p-adic unit");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), mantissa_.get_mpz_t(), ring_->modulus().get_mpz_t());
  return PAdicApprox(ring_, std::move(inv), accuracy_);
}

PAdicApprox PAdicApprox::divide_by_p_power(int k) const {
  if (k < 0) return multiply_by_p_power(-k);
  if (k == 0) return *this;
  if (k > accuracy_)
    throw PrecisionError("divide_by_p_power: accuracy " + std::to_string(accuracy_) +
                         " cannot absorb division by p^" + std::to_string(k));
  if (mantissa_ != 0 && val_p(mantissa_, prime()).value() < k)
    throw ArithmeticError("divide_by_p_power: valuation below " + std::to_string(k));
  Integer q;
  mpz_divexact(q.get_mpz_t(), mantissa_.get_mpz_t(), ring_->power(k).get_mpz_t());
  return PAdicApprox(ring_, std::move(q), accuracy_ - k);
}

PAdicApprox PAdicApprox::multiply_by_p_power(int k) const {
  if (k < 0) return divide_by_p_power(-k);
  if (k >= ring_->precision()) return PAdicApprox(ring_, 0, accuracy_);
  return PAdicApprox(ring_, ring_->reduce(Integer(mantissa_ * ring_->power(k))), accuracy_);
}

bool PAdicApprox::congruent(const PAdicApprox& other, int k) const {
  require_same(*this, other);
  if (k > std::min(accuracy_, other.accuracy_))
    throw PrecisionError("congruent: requested modulus exceeds accuracy");
  Integer d = mantissa_ - other.mantissa_;
  return mpz_divisible_p(d.get_mpz_t(), ring_->power(k).get_mpz_t()) != 0;
}

}  // namespace frobound
