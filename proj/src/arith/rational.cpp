// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/arith/rational.hpp"

#include <cctype>

#include "frobound/errors.hpp"

namespace frobound {

std::string Valuation::str() const {
  if (is_infinite()) return "inf";
  if (lower_bound_) return ">=" + std::to_string(value_);
  return std::to_string(value_);
}

Valuation min(const Valuation& a, const Valuation& b) {
  if (a.value() != b.value()) return a.value() < b.value() ? a : b;
  return a.is_lower_bound() ? b : a;
}

Valuation val_p(const Integer& n, long p) {
  if (n == 0) return Valuation::infinite();
  Integer rest;
  Integer prime = p;
  long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
  return Valuation::exact(v);
}

Valuation val_p(const Rational& q, long p) {
  if (q == 0) return Valuation::infinite();
  return Valuation::exact(val_p(Integer(q.get_num()), p).value() -
                          val_p(Integer(q.get_den()), p).value());
}

Integer ipow(long base, unsigned long e) {
  Integer r;
  Integer b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

int floor_log(long p, const Integer& n) {
  if (n < 1) throw ArithmeticError("floor_log: argument must be >= 1");
  int k = 0;
  Integer power = p;
  while (power <= n) {
    power *= p;
    ++k;
  }
  return k;
}

int ceil_log(long p, const Integer& n) {
  if (n < 1) throw ArithmeticError("ceil_log: argument must be >= 1");
  int k = 0;
  Integer power = 1;
  while (power < n) {
    power *= p;
    ++k;
  }
  return k;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return UnsupportedInput("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (start >= part.size()) throw bad();
    for (std::size_t i = start; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw bad();
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  check_int(num);
  check_int(den);
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer d(den);
  if (d == 0) throw bad();
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

}  // namespace frobound
