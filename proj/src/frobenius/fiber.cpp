// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/frobenius/fiber.hpp"

#include <map>

namespace frobound {

QPoly FiberCurve::poly() const {
  std::vector<Rational> c;
  for (const auto& x : q) c.emplace_back(x);
  return QPoly(std::move(c));
}

Integer FiberCurve::discriminant() const {
  if (q.size() != 4) throw UnsupportedInput("fiber: Q must be a cubic");
  // a x^3 + b x^2 + c x + d
  const Integer &d = q[0], &c = q[1], &b = q[2], &a = q[3];
  return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
}

void FiberCurve::validate() const {
  if (q.size() != 4 || q[3] == 0) throw UnsupportedInput("fiber: Q must be a cubic");
  if (p == 2 || !is_prime(p)) throw UnsupportedInput("fiber: p must be an odd prime");
  if (M < 1) throw UnsupportedInput("fiber: M must be positive");
  if (q[3] % p == 0) throw UnsupportedInput("fiber: p divides the leading coefficient");
  if (discriminant() % p == 0) throw UnsupportedInput("fiber: Q is not squarefree mod p (bad reduction)");
}

FiberCurve elliptic_example_fiber(const Integer& t, long p, int M) {
  return FiberCurve{{Integer(1), Integer(t + 1), Integer(t + 1), Integer(1)}, p, M};
}

int kedlaya_series_terms(long p, int M) {
  // term k has valuation >= k + 1 before reduction; lowering the pole from
  // p(2k+1) loses at most 1 + floor(log_p(2k+1)), the final degree
  // reduction at most one more digit
  for (int k = 0;; ++k) {
    bool all = true;
    for (int j = k; j < k + 64 && all; ++j)
      all = j + 1 - 1 - floor_log(p, Integer(2 * j + 1)) - 1 >= M;
    if (all) return k;
  }
}

namespace {

// Coordinates of A dx/y in the basis [dx/y, x dx/y] after lowering the
// x-degree with d(x^{j-2} y) = ((j-2) x^{j-3} Q + x^{j-2} Q'/2) dx/y.
std::pair<Rational, Rational> reduce_degree(QPoly a, const QPoly& q) {
  const QPoly dq = q.derivative();
  for (long j = a.degree(); j >= 2; --j) {
    Rational c = a[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    QPoly rel = dq.scaled(Rational(1, 2)) * QPoly::monomial(1, static_cast<std::size_t>(j - 2));
    if (j >= 3) rel += q.scaled(Rational(j - 2)) * QPoly::monomial(1, static_cast<std::size_t>(j - 3));
    a -= rel.scaled(c / rel[static_cast<std::size_t>(j)]);
  }
  return {a[0], a[1]};
}

}  // namespace

FiberFrobenius kedlaya_fiber_matrix(const FiberCurve& curve) {
  curve.validate();
  const long p = curve.p;
  const QPoly q = curve.poly();
  const QPoly dq = q.derivative();
  auto [ea, eb] = bezout(q, dq);  // ea Q + eb Q' = 1
  (void)ea;
  // E = Q(x^p) - Q(x)^p, divisible by p
  QPoly e = q.compose(QPoly::monomial(1, static_cast<std::size_t>(p))) - q.pow(static_cast<unsigned>(p));
  const int terms = kedlaya_series_terms(p, curve.M);

  FiberFrobenius out{PAdicMatrix(), terms, 0};
  RingPtr ring = make_ring(p, curve.M);
  std::vector<std::pair<Rational, Rational>> cols;
  for (int i = 0; i < 2; ++i) {
    // forms[s] holds A with A dx / y^(2s+1)
    std::map<long, QPoly> forms;
    QPoly ek(1);
    Rational binom = 1;  // binom(-1/2, k)
    const QPoly lead = QPoly::monomial(Rational(p), static_cast<std::size_t>(p * (i + 1) - 1));
    for (int k = 0; k < terms; ++k) {
      long s = (p * (2 * k + 1) - 1) / 2;
      forms[s] += (lead * ek).scaled(binom);
      ek *= e;
      binom *= Rational(-1, 2) - k;
      binom /= k + 1;
    }
    for (long s = forms.rbegin()->first; s >= 1; --s) {
      auto it = forms.find(s);
      if (it == forms.end()) continue;
      QPoly a = std::move(it->second);
      forms.erase(it);
      if (a.is_zero()) continue;
      // A = U Q + V Q' with V = A eb mod Q; then
      // A dx/y^(2s+1) == (U + 2 V'/(2s-1)) dx/y^(2s-1)
      QPoly v = divmod(a * eb, q).second;
      auto [u, rem] = divmod(a - v * dq, q);
      if (!rem.is_zero()) throw ArithmeticError("kedlaya: pole reduction remainder is nonzero");
      forms[s - 1] += u + v.derivative().scaled(Rational(2, 2 * s - 1));
    }
    cols.push_back(reduce_degree(forms[0], q));
  }
  RationalMatrix exact(2, 2, Rational(0));
  for (int i = 0; i < 2; ++i) {
    exact(0, static_cast<std::size_t>(i)) = cols[static_cast<std::size_t>(i)].first;
    exact(1, static_cast<std::size_t>(i)) = cols[static_cast<std::size_t>(i)].second;
  }
  try {
    out.phi0 = to_padic(exact, ring);
  } catch (const ArithmeticError&) {
    throw PrecisionError("kedlaya: truncated Frobenius matrix is not p-integral; increase the series length",
                         curve.M + 1);
  }
  PAdicApprox det = determinant(out.phi0);
  PAdicApprox tr = out.phi0(0, 0) + out.phi0(1, 1);
  Integer half = ring->modulus() / 2;
  out.a_p = tr.mantissa() > half ? Integer(tr.mantissa() - ring->modulus()) : tr.mantissa();
  if (det.mantissa() != ring->reduce(Integer(p)))
    throw PrecisionError("kedlaya: det Phi0 is not p mod p^M; increase the series length", curve.M + 1);
  if (out.a_p * out.a_p > 4 * Integer(p)) {
    // the symmetric lift is the true trace once p^M / 2 > 2 sqrt(p)
    Integer pm = ring->modulus();
    if (pm * pm > 16 * Integer(p))
      throw PrecisionError("kedlaya: trace violates the Hasse bound; increase the series length",
                           curve.M + 1);
  }
  return out;
}

}  // namespace frobound
