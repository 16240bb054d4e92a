// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/frobenius/deformation.hpp"

#include <algorithm>

#include "frobound/frobenius/fiber.hpp"

namespace frobound {

QPoly FrobeniusLift::action(long p) const {
  if (!centered) return QPoly::monomial(1, static_cast<std::size_t>(p));
  return QPoly::linear(z).pow(static_cast<unsigned>(p)) + QPoly(z);
}

std::string FrobeniusLift::str() const { return centered ? "centered:" + to_string(z) : "standard"; }

int working_precision(long p, int M, std::size_t K, int buffer) {
  return M + (K <= 1 ? 0 : ceil_log(p, Integer(static_cast<unsigned long>(K)))) + buffer;
}

namespace {

struct ExactSystem {
  QPoly den;                        // monic common denominator of N
  std::vector<RationalMatrix> nt;   // coefficients of den * N
};

ExactSystem exact_system(const Connection& conn) {
  ExactSystem s;
  s.den = common_denominator(conn.matrix());
  if (s.den.evaluate(0) == 0) throw UnsupportedInput("fundamental_solution: N has a pole at t = 0");
  const std::size_t r = conn.rank();
  PolyMatrix nt = conn.matrix().map([&](const RatFunc& f) {
    return f.numerator() * divmod(s.den, f.denominator()).first;
  });
  long deg = 0;
  for (const auto& e : nt.entries()) deg = std::max(deg, e.degree());
  for (long j = 0; j <= deg; ++j)
    s.nt.push_back(nt.map([&](const QPoly& f) { return f[static_cast<std::size_t>(j)]; }));
  if (s.nt.empty()) s.nt.push_back(RationalMatrix(r, r, Rational(0)));
  return s;
}

// den X' = sign * (left ? Nt X : X Nt), X(0) = I
std::vector<RationalMatrix> solve(const Connection& conn, std::size_t K, bool left) {
  ExactSystem s = exact_system(conn);
  const std::size_t r = conn.rank();
  std::vector<RationalMatrix> x;
  if (K == 0) return x;
  x.push_back(rational_identity(r));
  const Rational d0 = s.den[0];
  for (std::size_t k = 0; k + 1 < K; ++k) {
    // sum_j den_j (k+1-j) X_{k+1-j} = sign * sum_j (Nt_j X_{k-j} or X_{k-j} Nt_j)
    RationalMatrix rhs(r, r, Rational(0));
    for (std::size_t j = 0; j < s.nt.size() && j <= k; ++j)
      rhs = rhs + (left ? s.nt[j] * x[k - j] : x[k - j] * s.nt[j]);
    if (left) rhs = -rhs;
    for (long j = 1; j <= s.den.degree() && static_cast<std::size_t>(j) <= k + 1; ++j) {
      const Rational dj = s.den[static_cast<std::size_t>(j)];
      if (dj == 0) continue;
      const std::size_t idx = k + 1 - static_cast<std::size_t>(j);
      const Rational c = dj * Rational(static_cast<long>(idx));
      rhs = rhs - x[idx].map([&](const Rational& v) { return Rational(v * c); });
    }
    const Rational scale = 1 / (d0 * Rational(static_cast<long>(k + 1)));
    x.push_back(rhs.map([&](const Rational& v) { return Rational(v * scale); }));
  }
  return x;
}

ScaledSolution scale_and_reduce(const std::vector<RationalMatrix>& x, const RingPtr& ring, std::size_t K) {
  const long p = ring->prime();
  long vmin = 0;
  for (const auto& m : x) {
    Valuation v = valuation(m, p);
    if (!v.is_infinite()) vmin = std::min(vmin, v.value());
  }
  const int shift = static_cast<int>(-vmin);
  if (shift >= ring->precision())
    throw PrecisionError("fundamental_solution: valuation loss " + std::to_string(shift) +
                             " exhausts the working precision",
                         shift + 1);
  const std::size_t r = x.empty() ? 0 : x[0].rows();
  const Rational pk = Rational(ipow(p, static_cast<unsigned long>(shift)));
  std::vector<TruncSeries> entries;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Integer> c(K);
      for (std::size_t k = 0; k < x.size() && k < K; ++k) c[k] = ring->reduce(Rational(x[k](i, j) * pk));
      entries.emplace_back(ring, std::move(c), ring->precision());
    }
  return {SeriesMatrix(r, r, std::move(entries)), shift};
}

}  // namespace

std::vector<RationalMatrix> exact_fundamental_solution(const Connection& conn, std::size_t K) {
  return solve(conn, K, true);
}

std::vector<RationalMatrix> exact_inverse_solution(const Connection& conn, std::size_t K) {
  return solve(conn, K, false);
}

ScaledSolution fundamental_solution(const Connection& conn, const RingPtr& ring, std::size_t K) {
  return scale_and_reduce(exact_fundamental_solution(conn, K), ring, K);
}

ScaledSolution inverse_fundamental_solution(const Connection& conn, const RingPtr& ring, std::size_t K) {
  return scale_and_reduce(exact_inverse_solution(conn, K), ring, K);
}

SeriesMatrix FrobeniusData::phi_mod(int m) const {
  if (m > acc)
    throw PrecisionError("requested precision " + std::to_string(m) + " exceeds the accuracy " +
                             std::to_string(acc) + " of Phi",
                         m);
  return reduce_to(phi, make_ring(p, m));
}

FrobeniusData deformation_phi(const Connection& conn, const PAdicMatrix& phi0, int M, std::size_t K,
                              int buffer) {
  const long p = conn.prime();
  if (K < 2) throw UnsupportedInput("deformation_phi: K must be at least 2");
  FrobeniusData d;
  d.family = conn.family();
  d.p = p;
  d.M = M;
  d.K = K;
  d.buffer = buffer;
  d.Mw = working_precision(p, M, K, buffer);
  RingPtr ring = make_ring(p, d.Mw);
  if (phi0(0, 0).ring()->precision() < d.Mw) throw PrecisionError("deformation_phi: Phi0 is needed mod p^Mw", d.Mw);
  d.phi0 = phi0.map([&](const PAdicApprox& x) {
    return PAdicApprox(ring, ring->reduce(x.mantissa()), std::min(x.accuracy(), d.Mw));
  });
  ScaledSolution c = fundamental_solution(conn, ring, K);
  ScaledSolution inv = inverse_fundamental_solution(conn, ring, (K + static_cast<std::size_t>(p) - 1) / static_cast<std::size_t>(p));
  d.acc = d.Mw - c.shift - inv.shift;
  if (d.acc < M)
    throw PrecisionError("deformation_phi: accuracy " + std::to_string(d.acc) + " < M = " + std::to_string(M) +
                             "; increase the buffer by " + std::to_string(M - d.acc),
                         d.Mw + (M - d.acc));
  // D(t^p) padded to length K
  SeriesMatrix sigma_d = inv.scaled.map([&](const TruncSeries& f) {
    std::vector<Integer> m(K);
    for (std::size_t k = 0; k < f.length() && k * static_cast<std::size_t>(p) < K; ++k)
      m[k * static_cast<std::size_t>(p)] = f.mantissa(k);
    return TruncSeries(ring, std::move(m), ring->precision());
  });
  SeriesMatrix phi0_series = d.phi0.map([&](const PAdicApprox& x) { return TruncSeries::constant(x, K); });
  SeriesMatrix prod = multiply(multiply(c.scaled, phi0_series), sigma_d);
  const int shift = c.shift + inv.shift;
  d.phi = prod.map([&](const TruncSeries& f) {
    try {
      return f.divide_by_p_power(shift);
    } catch (const ArithmeticError&) {
      throw PrecisionError("deformation_phi: Phi is not p-integral to the working precision", d.Mw + 1);
    }
  });
  return d;
}

FrobeniusData compute_frobenius(const Connection& conn, int M, std::size_t K, int buffer) {
  if (conn.family() != kEllipticFamily)
    throw UnsupportedInput("compute_frobenius: the initial fiber is only known for " +
                           std::string(kEllipticFamily));
  const int mw = working_precision(conn.prime(), M, K, buffer);
  FiberFrobenius fiber = kedlaya_fiber_matrix(elliptic_example_fiber(0, conn.prime(), mw));
  return deformation_phi(conn, fiber.phi0, M, K, buffer);
}

Valuation frobeq_residual(const Connection& conn, const SeriesMatrix& phi) {
  const std::size_t K = length(phi);
  const RingPtr& ring = phi(0, 0).ring();
  const long p = ring->prime();
  if (K <= static_cast<std::size_t>(p)) return Valuation::at_least(ring->precision());
  SeriesMatrix n = to_series(conn.matrix(), ring, K);
  SeriesMatrix sigma_n = frobenius_substitute(n);
  SeriesMatrix a = multiply(n, phi);
  SeriesMatrix b = multiply(phi, sigma_n);
  SeriesMatrix dphi = derivative(phi);
  const std::size_t limit = K - static_cast<std::size_t>(p);
  Valuation v = Valuation::at_least(ring->precision());
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j)
      for (std::size_t k = 0; k < limit; ++k) {
        Integer r = a(i, j).mantissa(k) + dphi(i, j).mantissa(k);
        if (k + 1 >= static_cast<std::size_t>(p)) r -= p * b(i, j).mantissa(k + 1 - static_cast<std::size_t>(p));
        r = ring->reduce(r);
        if (r != 0) v = min(v, Valuation::exact(val_p(r, p).value()));
      }
  return v;
}

Valuation frobeq_residual(const Connection& conn, const FrobeniusData& data) {
  return frobeq_residual(conn, data.phi_mod(data.acc));
}

}  // namespace frobound
