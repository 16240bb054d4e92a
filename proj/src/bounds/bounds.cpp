// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/bounds/bounds.hpp"

#include <algorithm>

#include "frobound/connection/delta.hpp"
#include "frobound/connection/residue.hpp"

namespace frobound {

namespace {

long ilog_floor(long p, long i) { return i <= 1 ? 0 : floor_log(p, Integer(i)); }
long ilog_ceil(long p, long i) { return i <= 1 ? 0 : ceil_log(p, Integer(i)); }

long first_index(const BoundProfile& profile) {
  return profile.convention == IndexConvention::IncludeZero ? 0 : 1;
}

}  // namespace

std::string to_string(ZCase c) {
  switch (c) {
    case ZCase::NoPole:
      return "no-pole";
    case ZCase::ZeroOrInfinity:
      return "zero-or-infinity";
    case ZCase::GenericPole:
      return "generic-pole";
  }
  return "?";
}

void BoundProfile::validate() const {
  if (!is_prime(p)) throw UnsupportedInput("profile: p = " + std::to_string(p) + " is not prime");
  if (r < 1) throw UnsupportedInput("profile: r must be positive");
  if (s() > 0) throw UnsupportedInput("profile: v_p(Phi) + v_p(Phi^-1) must be <= 0");
  for (const auto& l : exponents) {
    Integer d = l.get_den();
    if (d % p == 0) throw UnsupportedInput("profile: exponent " + frobound::to_string(l) + " is not p-integral");
  }
}

long f_of_i(long i, const BoundProfile& pr) {
  if (i < 0) throw ArithmeticError("f_of_i: i must be nonnegative");
  const long s = pr.s();
  return std::max(s * ilog_ceil(pr.p, i), (pr.r - 1) * pr.vN + s * ilog_floor(pr.p, i));
}

long certified_scan_limit(long threshold, const BoundProfile& pr) {
  // i + f(i) >= h(i) = i + S ceil(log_p i); on the block p^(k-1) < i <= p^k
  // h is at least b_k = p^(k-1) + 1 + S k, and b_k is nondecreasing once
  // (p-1) p^(k-1) + S >= 0.
  const long s = pr.s();
  long pk = 1;  // p^(k-1)
  for (long k = 1;; ++k) {
    bool grows = (pr.p - 1) * pk + s >= 0;
    if (grows && pk + 1 + s * k > threshold) return pk;
    if (pk > (1L << 52) / pr.p) throw ArithmeticError("certified_scan_limit: overflow");
    pk *= pr.p;
  }
}

long c_value(const BoundProfile& pr) {
  if (pr.vN >= 0) return 0;
  long c = 0;
  long limit = certified_scan_limit(0, pr);
  for (long i = first_index(pr); i <= limit; ++i) c = std::min(c, i + f_of_i(i, pr));
  return c;
}

GValue g_of_m(long m, const BoundProfile& pr) {
  const long c = c_value(pr);
  const long rhs = m - pr.vPhi - c;  // need i + f(i) < rhs
  long limit = certified_scan_limit(rhs - 1, pr);
  GValue out{0, true};
  for (long i = first_index(pr); i <= limit; ++i)
    if (i + f_of_i(i, pr) < rhs) out = {i, false};
  return out;
}

long alpha1(const std::vector<Rational>& exponents, long p) {
  if (exponents.empty()) return 0;
  auto [lo, hi] = std::minmax_element(exponents.begin(), exponents.end());
  return floor(Rational(-p * *lo + *hi)).get_si();
}

Rational coefficient_vanishing_threshold(const std::vector<Rational>& exponents, long p) {
  if (exponents.empty()) return 0;
  auto [lo, hi] = std::minmax_element(exponents.begin(), exponents.end());
  return Rational(p * *lo - *hi);
}

std::string BoundRow::variant() const {
  if (no_pole) return "no-pole";
  std::string v;
  if (teichmuller_applied) v = "teichmuller";
  if (remark2_applied) v += v.empty() ? "remark2" : "+remark2";
  return v.empty() ? "base" : v;
}

BoundRow order_bound(long m, const BoundProfile& pr) {
  if (m < 1) throw UnsupportedInput("order_bound: m must be >= 1");
  pr.validate();
  BoundRow row;
  row.m = m;
  GValue g = g_of_m(m, pr);
  row.g = g.value;
  row.g_empty = g.empty_set;
  if (pr.z_case == ZCase::NoPole) {
    row.no_pole = true;
    return row;
  }
  row.alpha1 = alpha1(pr.exponents, pr.p);
  row.alpha2 = pr.z_case == ZCase::GenericPole ? g.value : 0;
  if (pr.vS_sum) {
    row.remark2_condition = g.value + pr.vPhi + c_value(pr) + *pr.vS_sum >= m;
    if (row.remark2_condition && row.alpha2 > 0) {
      row.alpha2 -= 1;
      row.remark2_applied = true;
    }
  }
  long mult = pr.p;
  if (pr.teichmuller && row.alpha2 > 0) {
    mult = pr.p - 1;
    row.teichmuller_applied = true;
  }
  row.bound = -(row.alpha1 + mult * row.alpha2);
  return row;
}

std::vector<BoundRow> bound_table(const BoundProfile& pr, long m_min, long m_max) {
  std::vector<BoundRow> rows;
  for (long m = m_min; m <= m_max; ++m) rows.push_back(order_bound(m, pr));
  return rows;
}

AdjustedBound basis_change_bound(const BoundRow& row, const RatFuncMatrix& w, const Point& z, long p,
                                 const std::vector<Point>& singular) {
  if (determinant(w).is_zero()) throw ArithmeticError("basis_change_bound: W is singular");
  RatFuncMatrix winv = inverse(w);
  auto vw = v_on_V(w, p, default_probe_length(w), singular);
  auto vwi = v_on_V(winv, p, default_probe_length(winv), singular);
  auto ord = [&](const RatFuncMatrix& a) {
    Valuation o = z.is_infinity() ? order_at_infinity(a) : order_at(a, z.value());
    return o.value();
  };
  return {row.m + vw.value() + vwi.value(), row.bound + ord(w) + p * ord(winv)};
}

long lift_change_terms(long m, const BoundProfile& pr) {
  const long rhs = m - pr.vPhi;  // terms with i + f(i) < rhs survive
  long limit = certified_scan_limit(rhs - 1, pr);
  long last = -1;
  for (long i = 0; i <= limit; ++i)
    if (i + f_of_i(i, pr) < rhs) last = i;
  return last + 1;
}

BoundProfile make_profile(const Connection& conn, const Point& z, long vPhi, long vPhiInv,
                          IndexConvention convention) {
  BoundProfile pr;
  pr.p = conn.prime();
  pr.r = static_cast<long>(conn.rank());
  pr.vPhi = vPhi;
  pr.vPhiInv = vPhiInv;
  pr.convention = convention;
  const auto& sing = conn.singular_points();
  Valuation vn = Valuation::infinite();
  try {
    vn = v_on_V(conn.matrix(), pr.p, default_probe_length(conn.matrix()), sing);
  } catch (const UnsupportedInput&) {
    // both probe discs meet Z; fall back to the Gauss valuation
    vn = gauss_valuation(conn.matrix(), pr.p);
  }
  pr.vN = vn.is_infinite() ? 0 : vn.value();
  if (pole_order(conn, z) == 0) {
    pr.z_case = ZCase::NoPole;
    return pr;
  }
  ResidueData rd = residue_data(conn, z);
  pr.exponents = rd.exponents;
  pr.z_case = (z.is_infinity() || z.value() == 0) ? ZCase::ZeroOrInfinity : ZCase::GenericPole;
  if (!z.is_infinity()) {
    Rational zp = 1;
    for (long k = 0; k < pr.p; ++k) zp *= z.value();
    pr.teichmuller = zp == z.value();
  }
  if (rd.diagonalizer) pr.vS_sum = diagonalizer_valuation_sum(*rd.diagonalizer, pr.p);
  return pr;
}

}  // namespace frobound
