// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/arith/series.hpp"

#include <algorithm>

#include "frobound/errors.hpp"

namespace frobound {

namespace {

void require_compatible(const TruncSeries& a, const TruncSeries& b) {
  if (!same_ring(a.ring(), b.ring())) throw ArithmeticError("series live in different rings");
  if (a.length() != b.length()) throw ArithmeticError("series truncation lengths differ");
}

std::vector<int> prefix_min(const std::vector<int>& v) {
  std::vector<int> out(v.size());
  int m = v.empty() ? 0 : v[0];
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = m = std::min(m, v[i]);
  return out;
}

}  // namespace

TruncSeries::TruncSeries(RingPtr ring, std::size_t length)
    : ring_(std::move(ring)), c_(length), acc_(length, ring_->precision()) {}

TruncSeries::TruncSeries(RingPtr ring, std::vector<Integer> mantissas, int accuracy)
    : ring_(std::move(ring)), c_(std::move(mantissas)), acc_(c_.size(), accuracy) {
  if (accuracy < 0 || accuracy > ring_->precision())
    throw ArithmeticError("TruncSeries: accuracy outside [0, Mw]");
  for (auto& x : c_)
    if (x < 0 || x >= ring_->modulus()) x = ring_->reduce(x);
}

TruncSeries::TruncSeries(RingPtr ring, std::vector<Integer> mantissas, std::vector<int> accuracy)
    : ring_(std::move(ring)), c_(std::move(mantissas)), acc_(std::move(accuracy)) {
  if (acc_.size() != c_.size()) throw ArithmeticError("TruncSeries: accuracy vector size");
  for (int a : acc_)
    if (a < 0 || a > ring_->precision())
      throw ArithmeticError("TruncSeries: accuracy outside [0, Mw]");
  for (auto& x : c_)
    if (x < 0 || x >= ring_->modulus()) x = ring_->reduce(x);
}

TruncSeries TruncSeries::from_poly(RingPtr ring, const QPoly& f, std::size_t length) {
  std::vector<Integer> c(length);
  for (std::size_t i = 0; i < length && static_cast<long>(i) <= f.degree(); ++i)
    c[i] = ring->reduce(f[i]);
  int prec = ring->precision();
  return TruncSeries(std::move(ring), std::move(c), prec);
}

TruncSeries TruncSeries::constant(const PAdicApprox& c, std::size_t length) {
  TruncSeries s(c.ring(), length);
  if (length > 0) s.set_coefficient(0, c);
  return s;
}

int TruncSeries::accuracy() const {
  return acc_.empty() ? ring_->precision() : *std::min_element(acc_.begin(), acc_.end());
}

void TruncSeries::set_coefficient(std::size_t i, const PAdicApprox& a) {
  if (!same_ring(a.ring(), ring_)) throw ArithmeticError("set_coefficient: ring mismatch");
  c_.at(i) = a.mantissa();
  acc_.at(i) = a.accuracy();
}

bool TruncSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Integer& x) { return x == 0; });
}

Valuation TruncSeries::valuation() const {
  Valuation v = Valuation::at_least(ring_->precision());
  for (const auto& x : c_)
    if (x != 0)
      v = min(v, Valuation::exact(std::min<long>(val_p(x, prime()).value(), ring_->precision())));
  return v;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r = *this;
  for (auto& x : r.c_)
    if (x != 0) x = ring_->modulus() - x;
  return r;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  require_compatible(a, b);
  TruncSeries r = a;
  const Integer& mod = a.ring_->modulus();
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    r.c_[i] += b.c_[i];
    if (r.c_[i] >= mod) r.c_[i] -= mod;
    r.acc_[i] = std::min(a.acc_[i], b.acc_[i]);
  }
  return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  require_compatible(a, b);
  const std::size_t n = a.c_.size();
  std::vector<Integer> sum(n);
  std::vector<std::size_t> nz_b;
  for (std::size_t j = 0; j < n; ++j)
    if (b.c_[j] != 0) nz_b.push_back(j);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    const mpz_srcptr ai = a.c_[i].get_mpz_t();
    for (std::size_t j : nz_b) {
      if (i + j >= n) break;
      mpz_addmul(sum[i + j].get_mpz_t(), ai, b.c_[j].get_mpz_t());
    }
  }
  for (auto& x : sum) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), a.ring_->modulus().get_mpz_t());
  auto pa = prefix_min(a.acc_);
  auto pb = prefix_min(b.acc_);
  std::vector<int> acc(n);
  for (std::size_t k = 0; k < n; ++k) acc[k] = std::min(pa[k], pb[k]);
  return TruncSeries(a.ring_, std::move(sum), std::move(acc));
}

TruncSeries TruncSeries::scaled(const PAdicApprox& s) const {
  if (!same_ring(s.ring(), ring_)) throw ArithmeticError("scaled: ring mismatch");
  TruncSeries r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    r.c_[i] = ring_->reduce(Integer(c_[i] * s.mantissa()));
    r.acc_[i] = std::min(acc_[i], s.accuracy());
  }
  return r;
}

TruncSeries TruncSeries::derivative() const {
  if (c_.empty()) return *this;
  std::vector<Integer> d(c_.size() - 1);
  std::vector<int> acc(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    d[i - 1] = ring_->reduce(Integer(c_[i] * static_cast<unsigned long>(i)));
    acc[i - 1] = acc_[i];
  }
  return TruncSeries(ring_, std::move(d), std::move(acc));
}

TruncSeries TruncSeries::unit_inverse() const {
  if (c_.empty()) return *this;
  if (c_[0] % prime() == 0)
    throw ArithmeticError("unit_inverse: constant term is not a p-adic unit");
  const Integer& mod = ring_->modulus();
  Integer inv0;
  mpz_invert(inv0.get_mpz_t(), c_[0].get_mpz_t(), mod.get_mpz_t());
  const std::size_t n = c_.size();
  std::vector<Integer> r(n);
  r[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    Integer s = 0;
    for (std::size_t j = 1; j <= k; ++j)
      if (c_[j] != 0) mpz_addmul(s.get_mpz_t(), c_[j].get_mpz_t(), r[k - j].get_mpz_t());
    s = -s * inv0;
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    r[k] = s;
  }
  return TruncSeries(ring_, std::move(r), prefix_min(acc_));
}

TruncSeries TruncSeries::frobenius_substitute(long q) const {
  if (q < 1) throw ArithmeticError("frobenius_substitute: exponent must be positive");
  const std::size_t n = c_.size();
  TruncSeries r(ring_, n);
  auto step = static_cast<std::size_t>(q);
  for (std::size_t i = 0; i * step < n; ++i) {
    r.c_[i * step] = c_[i];
    r.acc_[i * step] = acc_[i];
  }
  // positions between images are exact zeros only if every source index up
  // to there was known; keep the prefix minimum of the source accuracy
  int running = ring_->precision();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t src = k / step;
    running = std::min(running, acc_[src]);
    r.acc_[k] = running;
  }
  return r;
}

TruncSeries TruncSeries::truncated(std::size_t length) const {
  if (length > c_.size()) throw ArithmeticError("truncated: cannot extend a series");
  return TruncSeries(ring_, std::vector<Integer>(c_.begin(), c_.begin() + static_cast<long>(length)),
                     std::vector<int>(acc_.begin(), acc_.begin() + static_cast<long>(length)));
}

TruncSeries TruncSeries::times_linear(const Integer& z) const {
  const Integer& mod = ring_->modulus();
  const std::size_t n = c_.size();
  std::vector<Integer> r(n);
  std::vector<int> acc(n);
  Integer zr = ring_->reduce(z);
  for (std::size_t k = 0; k < n; ++k) {
    Integer v = -zr * c_[k];
    if (k > 0) v += c_[k - 1];
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    r[k] = std::move(v);
    acc[k] = k > 0 ? std::min(acc_[k], acc_[k - 1]) : acc_[k];
  }
  return TruncSeries(ring_, std::move(r), std::move(acc));
}

TruncSeries TruncSeries::divided_by_linear(const Integer& z) const {
  // g = f/(t - z): f_k = g_{k-1} - z g_k, so g_k = (g_{k-1} - f_k)/z
  const Integer& mod = ring_->modulus();
  Integer zr = ring_->reduce(z);
  if (zr % prime() == 0) throw ArithmeticError("divided_by_linear: z must be a p-adic unit");
  Integer zinv;
  mpz_invert(zinv.get_mpz_t(), zr.get_mpz_t(), mod.get_mpz_t());
  const std::size_t n = c_.size();
  std::vector<Integer> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    Integer v = (k > 0 ? g[k - 1] : Integer(0)) - c_[k];
    v *= zinv;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    g[k] = std::move(v);
  }
  return TruncSeries(ring_, std::move(g), prefix_min(acc_));
}

TruncSeries TruncSeries::divided_by(const TruncSeries& q) const {
  require_compatible(*this, q);
  if (q.c_.empty()) return *this;
  if (q.c_[0] % prime() == 0) throw ArithmeticError("divided_by: constant term is not a p-adic unit");
  const Integer& mod = ring_->modulus();
  Integer inv0;
  mpz_invert(inv0.get_mpz_t(), q.c_[0].get_mpz_t(), mod.get_mpz_t());
  std::vector<std::size_t> nz;
  for (std::size_t j = 1; j < q.c_.size(); ++j)
    if (q.c_[j] != 0) nz.push_back(j);
  const std::size_t n = c_.size();
  std::vector<Integer> h(n);
  for (std::size_t k = 0; k < n; ++k) {
    Integer s = c_[k];
    for (std::size_t j : nz) {
      if (j > k) break;
      mpz_submul(s.get_mpz_t(), q.c_[j].get_mpz_t(), h[k - j].get_mpz_t());
    }
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    s *= inv0;
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    h[k] = std::move(s);
  }
  auto pa = prefix_min(acc_);
  auto pq = prefix_min(q.acc_);
  std::vector<int> acc(n);
  for (std::size_t k = 0; k < n; ++k) acc[k] = std::min(pa[k], pq[k]);
  return TruncSeries(ring_, std::move(h), std::move(acc));
}

TruncSeries TruncSeries::divide_by_p_power(int k) const {
  TruncSeries r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    PAdicApprox a = coefficient(i).divide_by_p_power(k);
    r.c_[i] = a.mantissa();
    r.acc_[i] = a.accuracy();
  }
  return r;
}

TruncSeries TruncSeries::reduce_to(const RingPtr& smaller) const {
  if (smaller->prime() != prime() || smaller->precision() > ring_->precision())
    throw ArithmeticError("reduce_to: target ring is not a quotient");
  if (smaller->precision() > accuracy())
    throw PrecisionError("reduce_to: series accuracy " + std::to_string(accuracy()) +
                             " is below the requested precision " +
                             std::to_string(smaller->precision()),
                         smaller->precision());
  std::vector<Integer> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = smaller->reduce(c_[i]);
  return TruncSeries(smaller, std::move(c), smaller->precision());
}

std::vector<Rational> exact_series(const QPoly& num, const QPoly& den, unsigned power,
                                   std::size_t length) {
  if (den.is_zero()) throw ArithmeticError("exact_series: zero denominator");
  std::vector<Rational> h(length);
  if (num.is_zero()) return h;
  // remove common powers of t so that the remaining denominator is a unit at 0
  long shift_num = 0;
  while (num[static_cast<std::size_t>(shift_num)] == 0) ++shift_num;
  long shift_den = 0;
  while (den[static_cast<std::size_t>(shift_den)] == 0) ++shift_den;
  long net = shift_num - shift_den * static_cast<long>(power);
  if (net < 0) throw ArithmeticError("exact_series: pole at t = 0");
  for (std::size_t i = 0; i + static_cast<std::size_t>(net) < length; ++i)
    h[i + static_cast<std::size_t>(net)] = num[i + static_cast<std::size_t>(shift_num)];
  std::vector<Rational> d;
  for (long i = shift_den; i <= den.degree(); ++i) d.push_back(den[static_cast<std::size_t>(i)]);
  Rational inv0 = 1 / d[0];
  for (unsigned rep = 0; rep < power; ++rep) {
    for (std::size_t k = 0; k < length; ++k) {
      Rational s = h[k];
      for (std::size_t j = 1; j < d.size() && j <= k; ++j)
        if (d[j] != 0) s -= d[j] * h[k - j];
      h[k] = s * inv0;
    }
  }
  return h;
}

TruncSeries ratfunc_to_series(const RatFunc& f, const RingPtr& ring, std::size_t length) {
  const long p = ring->prime();
  if (f.is_zero()) return TruncSeries(ring, length);
  if (f.denominator().evaluate(0) == 0) throw ArithmeticError("ratfunc_to_series: pole at t = 0");
  // f = scale * N/D with N, D primitive integral; D(0) must then be a unit
  auto primitive = [](const QPoly& g, Rational& content) {
    Integer den = 1, num = 0;
    for (const auto& c : g.coefficients()) {
      Integer cd = c.get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), cd.get_mpz_t());
    }
    std::vector<Integer> ints;
    for (const auto& c : g.coefficients()) {
      ints.push_back(c.get_num() * (den / c.get_den()));
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), ints.back().get_mpz_t());
    }
    for (auto& x : ints) x /= num;
    content = Rational(num, den);
    content.canonicalize();
    return ints;
  };
  Rational cn, cd;
  auto n_int = primitive(f.numerator(), cn);
  auto d_int = primitive(f.denominator(), cd);
  Rational scale = cn / cd;
  if (d_int[0] % p == 0)
    throw ArithmeticError("ratfunc_to_series: expansion at 0 has coefficients with unbounded "
                          "p-power denominators");
  if (val_p(scale, p).value() < 0)
    throw ArithmeticError("ratfunc_to_series: expansion coefficient denominator divisible by p");
  const Integer& mod = ring->modulus();
  Integer inv0;
  Integer d0 = d_int[0];
  mpz_invert(inv0.get_mpz_t(), d0.get_mpz_t(), mod.get_mpz_t());
  Integer s_red = ring->reduce(scale);
  std::vector<Integer> c(length);
  for (std::size_t k = 0; k < length; ++k) {
    Integer s = k < n_int.size() ? n_int[k] : Integer(0);
    for (std::size_t j = 1; j < d_int.size() && j <= k; ++j)
      mpz_submul(s.get_mpz_t(), d_int[j].get_mpz_t(), c[k - j].get_mpz_t());
    s *= inv0;
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    c[k] = std::move(s);
  }
  for (auto& x : c) x = ring->reduce(Integer(x * s_red));
  return TruncSeries(ring, std::move(c), ring->precision());
}

TruncSeries ratfunc_to_series(const RatFunc& f, long p, int working_precision, std::size_t length) {
  return ratfunc_to_series(f, make_ring(p, working_precision), length);
}

}  // namespace frobound
