// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/frobenius/lift.hpp"

#include <algorithm>

#include "frobound/connection/delta.hpp"
#include "frobound/connection/residue.hpp"

namespace frobound {

namespace {

// p^shift * f as a truncated series; f must become p-integral.
TruncSeries scaled_poly(const QPoly& f, long shift, const RingPtr& ring, std::size_t len) {
  Rational s = shift >= 0 ? Rational(ipow(ring->prime(), static_cast<unsigned long>(shift)))
                          : Rational(1, ipow(ring->prime(), static_cast<unsigned long>(-shift)));
  return TruncSeries::from_poly(ring, f.scaled(s), len);
}

long gauss(const QPoly& f, long p) {
  Valuation v = f.gauss_valuation(p);
  return v.is_infinite() ? Valuation::kInfinity : v.value();
}

// L_i = max(0, -v_p(P_i)) over the entries.
long denominator_loss(const PolyMatrix& pi, long p) {
  long li = 0;
  for (const auto& e : pi.entries())
    if (!e.is_zero()) li = std::max(li, -gauss(e, p));
  return li;
}

}  // namespace

LiftChange change_frobenius_lift(const SeriesMatrix& phi1, const Connection& conn, const FrobeniusLift& lift1,
                                 const FrobeniusLift& lift2, const BoundProfile& profile) {
  const RingPtr& ring = phi1(0, 0).ring();
  const long p = ring->prime();
  const int m = ring->precision();
  const std::size_t len = length(phi1);
  if (lift1 == lift2) return {phi1, 1};
  const QPoly s1 = lift1.action(p);
  const QPoly d = lift2.action(p) - s1;
  const long vd = gauss(d, p);
  if (vd < 1) throw ArithmeticError("change_frobenius_lift: the lifts do not agree mod p");
  const QPoly dred = d.scaled(Rational(1, ipow(p, static_cast<unsigned long>(vd))));
  const long terms = lift_change_terms(m, profile);

  DeltaSequence seq(conn);
  const QPoly den_s = seq.denominator().compose(s1);
  // certify that terms beyond I(m) vanish: i vd - L_i >= m
  for (long i = terms; i < terms + p + 1; ++i) {
    const long li = denominator_loss(seq.numerator(static_cast<std::size_t>(i)), p);
    if (i * vd - li < m)
      throw ArithmeticError("change_frobenius_lift: term " + std::to_string(i) +
                            " beyond I(m) does not vanish mod p^m (profile inconsistent)");
  }
  // numerator over den(s1)^(I-1): sum_i p^(i vd - L_i) dred^i (p^L_i P_i(s1)) den(s1)^(I-1-i)
  const std::size_t r = conn.rank();
  const TruncSeries dser = TruncSeries::from_poly(ring, dred, len);
  const TruncSeries den_ser = TruncSeries::from_poly(ring, den_s, len);
  std::vector<TruncSeries> den_pows{TruncSeries::constant(PAdicApprox::one(ring), len)};
  for (long i = 1; i < terms; ++i) den_pows.push_back(den_pows.back() * den_ser);
  SeriesMatrix numer = series_zero(ring, r, len);
  TruncSeries dpow = TruncSeries::constant(PAdicApprox::one(ring), len);
  for (long i = 0; i < terms; ++i) {
    const PolyMatrix pi = seq.numerator(static_cast<std::size_t>(i));
    const long li = denominator_loss(pi, p);
    const long e = i * vd - li;
    if (e < 0) throw ArithmeticError("change_frobenius_lift: Delta term " + std::to_string(i) + " is not integral");
    if (e < m) {
      TruncSeries w = dpow * den_pows[static_cast<std::size_t>(terms - 1 - i)];
      w = w.scaled(PAdicApprox(ring, ring->power(static_cast<int>(e)), m));
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
          if (pi(a, b).is_zero()) continue;
          numer(a, b) += scaled_poly(pi(a, b).compose(s1), li, ring, len) * w;
        }
    }
    dpow = dpow * dser;
  }
  SeriesMatrix out = multiply(phi1, numer);
  out = out.map([&](const TruncSeries& f) {
    TruncSeries g = f;
    for (long i = 1; i < terms; ++i) g = g.divided_by(den_ser);
    return g;
  });
  return {out, terms};
}

ModRatFuncMatrix change_frobenius_lift(const ModRatFuncMatrix& phi1, const Connection& conn,
                                       const FrobeniusLift& lift1, const FrobeniusLift& lift2,
                                       const BoundProfile& profile, std::size_t length,
                                       const std::vector<ClearedPoint>& poles, int window) {
  LiftChange ch = change_frobenius_lift(phi1.expand(length), conn, lift1, lift2, profile);
  return rational_reconstruction(ch.phi, poles, window);
}

LiftCheckReport local_lift_phi_check(const Connection& conn, const FrobeniusData& data, const Rational& z,
                                     int m, int window) {
  const Point zp = Point::at(z);
  ExperimentOptions opt;
  BoundProfile prof = experiment_profile(conn, data, zp, opt);
  LiftCheckReport rep;
  rep.z = z;
  rep.m = m;
  SeriesMatrix phi1 = data.phi_mod(m);
  LiftChange ch = change_frobenius_lift(phi1, conn, data.lift, FrobeniusLift::centered_at(z), prof);
  rep.terms = ch.terms;
  // the other singular points carry the poles of Delta^(i)(t^p) as well
  std::vector<ClearedPoint> others;
  long guess = 0;
  for (const auto& s : conn.singular_points()) {
    if (s.is_infinity() || s == zp) continue;
    BoundProfile po = experiment_profile(conn, data, s, opt);
    long b = std::max(0L, -order_bound(m, po).bound) + data.p * (ch.terms + m) + kDefaultSlack;
    others.push_back({s.value(), b});
  }
  if (prof.z_case != ZCase::NoPole) guess = std::max(0L, -order_bound(m, prof).bound);
  const bool unit_z = val_p(z, data.p) == Valuation::exact(0);
  if (unit_z) {
    long cap = default_degree_cap(guess, others);
    OrderMeasurement meas = measure_series_order(ch.phi, z, others, window, cap);
    rep.order = meas.order;
  } else if (prof.z_case != ZCase::NoPole) {
    throw UnsupportedInput("local_lift_phi_check: pole at a non-unit point " + to_string(z));
  }
  bool all_zero = !prof.exponents.empty() &&
                  std::all_of(prof.exponents.begin(), prof.exponents.end(), [](const Rational& x) { return x == 0; });
  if (prof.z_case == ZCase::NoPole || all_zero)
    rep.required = 0;
  else
    rep.required = -alpha1(prof.exponents, data.p);
  if (!unit_z) {
    // no pole allowed at z: Phi' must reconstruct with denominators at the other points only
    try {
      rep.numerator_degree = rational_reconstruction(ch.phi, others, window).numerator_degree();
      rep.order = Valuation::at_least(0);
    } catch (const ArithmeticError&) {
      // some pole at z; its order is not measured at a non-unit point
      rep.order = Valuation::exact(-1);
      rep.detail = "pole at z of unmeasured order; ";
    }
  } else if (!rep.order.is_infinite()) {
    std::vector<ClearedPoint> poles = others;
    poles.push_back({z, std::max(0L, -rep.order.value())});
    rep.numerator_degree = rational_reconstruction(ch.phi, poles, window).numerator_degree();
  }
  Valuation vp = valuation(ch.phi);
  rep.v_phi_prime = vp.value();
  rep.v_phi_plus_c = prof.vPhi + c_value(prof);
  bool order_ok = rep.order.value() >= rep.required;
  bool val_ok = rep.v_phi_prime >= rep.v_phi_plus_c;
  rep.passed = order_ok && val_ok;
  rep.detail += "order " + (rep.order.is_lower_bound() ? ">=" : std::string()) + std::to_string(rep.order.value()) +
               " vs required " + std::to_string(rep.required) + "; v_p(Phi') " + std::to_string(rep.v_phi_prime) +
               " vs v_p(Phi)+c " + std::to_string(rep.v_phi_plus_c);
  return rep;
}

DeltaCheckReport delta_valuation_check(const Connection& conn, const BoundProfile& profile, long i_max) {
  if (profile.vN < 0) throw UnsupportedInput("delta_valuation_check: requires v_p(N) >= 0");
  DeltaCheckReport rep;
  rep.i_max = i_max;
  DeltaSequence seq(conn);
  const auto& sing = conn.singular_points();
  QPoly den_pow(1);
  for (long i = 0; i <= i_max; ++i) {
    const PolyMatrix pi = seq.numerator(static_cast<std::size_t>(i));
    if (i > 0) den_pow *= seq.denominator();
    long deg = 0;
    for (const auto& e : pi.entries()) deg = std::max(deg, e.degree());
    const std::size_t probe = static_cast<std::size_t>(std::max(64L, std::max(deg, den_pow.degree()) + 16));
    Valuation v = Valuation::infinite();
    for (const auto& e : pi.entries()) v = min(v, v_on_V(e, den_pow, profile.p, probe, sing));
    const long fv = f_of_i(i, profile);
    const long value = v.is_infinite() ? Valuation::kInfinity : v.value();
    rep.values.push_back(value);
    rep.bounds.push_back(fv);
    if (value < fv) rep.violations.push_back({i, value, fv});
  }
  return rep;
}

}  // namespace frobound
