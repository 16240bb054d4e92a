// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/connection/delta.hpp"

#include <algorithm>

namespace frobound {

DeltaSequence::DeltaSequence(const Connection& conn)
    : den_(common_denominator(conn.matrix())),
      den_prime_(den_.derivative()),
      n_tilde_(conn.matrix().map([this](const RatFunc& f) {
        auto [q, rem] = divmod(den_, f.denominator());
        return f.numerator() * q;
      })) {
  const std::size_t r = conn.rank();
  PolyMatrix id(r, r, QPoly());
  for (std::size_t i = 0; i < r; ++i) id(i, i) = QPoly(1);
  p_.push_back(std::move(id));
}

PolyMatrix DeltaSequence::numerator(std::size_t i) {
  std::lock_guard<std::mutex> lock(mu_);
  while (p_.size() <= i) {
    const std::size_t k = p_.size() - 1;
    const PolyMatrix& pk = p_.back();
    PolyMatrix np = n_tilde_ * pk;
    const Rational inv(1, static_cast<long>(k + 1));
    const QPoly shift = den_prime_.scaled(Rational(static_cast<long>(k)));
    for (std::size_t a = 0; a < pk.rows(); ++a)
      for (std::size_t b = 0; b < pk.cols(); ++b)
        np(a, b) = (den_ * pk(a, b).derivative() - shift * pk(a, b) + np(a, b)).scaled(inv);
    p_.push_back(std::move(np));
  }
  return p_[i];
}

RatFuncMatrix DeltaSequence::delta(std::size_t i) {
  PolyMatrix p = numerator(i);
  QPoly d = den_.pow(static_cast<unsigned>(i));
  return p.map([&](const QPoly& f) { return RatFunc(f, d); });
}

std::size_t DeltaSequence::computed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return p_.size();
}

std::vector<RatFuncMatrix> delta_matrices(const Connection& conn, std::size_t i_max) {
  DeltaSequence seq(conn);
  std::vector<RatFuncMatrix> out;
  for (std::size_t i = 0; i <= i_max; ++i) out.push_back(seq.delta(i));
  return out;
}

namespace {

bool point_in_disc_at_zero(const Point& z, long p) {
  return !z.is_infinity() && (z.value() == 0 || val_p(z.value(), p).value() > 0);
}

bool point_in_disc_at_infinity(const Point& z, long p) {
  return z.is_infinity() || (z.value() != 0 && val_p(z.value(), p).value() < 0);
}

// g = content * G with G a primitive integer polynomial.
std::vector<Integer> primitive_part(const QPoly& g, Rational& content) {
  Integer l = 1, c = 0;
  for (const auto& x : g.coefficients()) {
    Integer d = x.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Integer> ints;
  for (const auto& x : g.coefficients()) {
    ints.push_back(x.get_num() * (l / x.get_den()));
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), ints.back().get_mpz_t());
  }
  for (auto& x : ints) x /= c;
  content = Rational(c, l);
  content.canonicalize();
  return ints;
}

constexpr int kProbeDigits = 3;

// Minimum coefficient valuation of the Taylor expansion of num/den at 0,
// over the first k coefficients. The expansion is computed modulo
// p^kProbeDigits after removing contents, which is exact because a unit
// coefficient of N/D occurs at an index <= deg N.
Valuation probe_disc(const QPoly& num, const QPoly& den, long p, std::size_t k, const char* where) {
  Rational cn, cd;
  auto n = primitive_part(num, cn);
  auto d = primitive_part(den, cd);
  if (d[0] % p == 0)
    throw ArithmeticError(std::string("v_on_V: pole inside the disc at ") + where);
  if (p > (1L << 20)) throw UnsupportedInput("v_on_V: prime too large for the probe");
  long modulus = 1;
  for (int i = 0; i < kProbeDigits; ++i) modulus *= p;
  auto red = [modulus](const Integer& x) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(modulus));
    return static_cast<long>(r.get_si());
  };
  std::vector<long> nr, dr;
  for (const auto& x : n) nr.push_back(red(x));
  for (const auto& x : d) dr.push_back(red(x));
  Integer inv;
  Integer d0 = dr[0], mod = modulus;
  mpz_invert(inv.get_mpz_t(), d0.get_mpz_t(), mod.get_mpz_t());
  const long inv0 = inv.get_si();
  std::vector<long> h(k);
  long best = kProbeDigits;
  for (std::size_t i = 0; i < k; ++i) {
    __int128 acc = i < nr.size() ? nr[i] : 0;
    for (std::size_t j = 1; j < dr.size() && j <= i; ++j)
      acc = (acc - static_cast<__int128>(dr[j]) * h[i - j]) % modulus;
    acc = ((acc * inv0) % modulus + modulus) % modulus;
    long s = static_cast<long>(acc);
    h[i] = s;
    if (s != 0) {
      long v = 0;
      for (long x = s; x % p == 0; x /= p) ++v;
      best = std::min(best, v);
    }
  }
  long base = val_p(cn / cd, p).value();
  return best >= kProbeDigits ? Valuation::at_least(base + kProbeDigits) : Valuation::exact(base + best);
}

}  // namespace

Valuation v_on_V(const RatFunc& f, long p, std::size_t k_probe, const std::vector<Point>& excluded) {
  return v_on_V(f.numerator(), f.denominator(), p, k_probe, excluded);
}

Valuation v_on_V(const QPoly& numerator, const QPoly& denominator, long p, std::size_t k_probe,
                 const std::vector<Point>& excluded) {
  if (numerator.is_zero()) return Valuation::infinite();
  Valuation v = Valuation::infinite();
  bool probed = false;
  bool skip0 = std::any_of(excluded.begin(), excluded.end(),
                           [p](const Point& z) { return point_in_disc_at_zero(z, p); });
  if (!skip0) {
    v = min(v, probe_disc(numerator, denominator, p, k_probe, "0"));
    probed = true;
  }
  bool skip_inf = std::any_of(excluded.begin(), excluded.end(),
                              [p](const Point& z) { return point_in_disc_at_infinity(z, p); });
  if (!skip_inf) {
    long dn = numerator.degree(), dd = denominator.degree();
    if (dn > dd) throw ArithmeticError("v_on_V: pole inside the disc at infinity");
    // f(1/s) = s^(dd-dn) rev(num)/rev(den)
    QPoly num = numerator.reversed(static_cast<std::size_t>(dn)) *
                QPoly::monomial(1, static_cast<std::size_t>(dd - dn));
    QPoly den = denominator.reversed(static_cast<std::size_t>(dd));
    v = min(v, probe_disc(num, den, p, k_probe, "infinity"));
    probed = true;
  }
  if (!probed) throw UnsupportedInput("v_on_V: both probe discs are excluded");
  return v;
}

Valuation v_on_V(const RatFuncMatrix& f, long p, std::size_t k_probe, const std::vector<Point>& excluded) {
  Valuation v = Valuation::infinite();
  for (const auto& e : f.entries()) v = min(v, v_on_V(e, p, k_probe, excluded));
  return v;
}

std::size_t default_probe_length(const RatFuncMatrix& f) {
  long d = 0;
  for (const auto& e : f.entries())
    d = std::max({d, e.numerator().degree(), e.denominator().degree()});
  return static_cast<std::size_t>(std::max(64L, d + 16));
}

}  // namespace frobound
