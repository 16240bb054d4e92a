// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "frobound/bounds/bounds.hpp"
#include "frobound/frobenius/deformation.hpp"
#include "frobound/reconstruct/reconstruct.hpp"

namespace frobound {

struct LiftChange {
  /// Phi for the second lift, expanded at 0, mod p^m.
  SeriesMatrix phi;
  /// Number of terms i < I(m) kept.
  long terms = 0;
};

/// Phi_2 = sum_{i < I(m)} (s_2 - s_1)^i Phi_1 Delta^(i)(s_1), with s_k the
/// action of lift_k on t and I(m) from lift_change_terms. phi1 lives in
/// Z/p^m; `profile` supplies v_p(Phi_1) and f. Throws ArithmeticError when a
/// kept term is not integral or a term beyond I(m) fails to vanish.
LiftChange change_frobenius_lift(const SeriesMatrix& phi1, const Connection& conn, const FrobeniusLift& lift1,
                                 const FrobeniusLift& lift2, const BoundProfile& profile);

/// change_frobenius_lift on a rational representative: expands Phi_1 to
/// `length` terms, changes the lift and reconstructs with denominators
/// supported on `poles`.
ModRatFuncMatrix change_frobenius_lift(const ModRatFuncMatrix& phi1, const Connection& conn,
                                       const FrobeniusLift& lift1, const FrobeniusLift& lift2,
                                       const BoundProfile& profile, std::size_t length,
                                       const std::vector<ClearedPoint>& poles, int window = kDefaultWindow);

struct LiftCheckReport {
  Rational z;
  long m = 0;
  long terms = 0;
  Valuation order = Valuation::infinite();
  long required = 0;
  long v_phi_prime = 0;
  long v_phi_plus_c = 0;
  /// Degree of the numerator of the reconstructed Phi'.
  long numerator_degree = 0;
  bool passed = false;
  std::string detail;
};

/// Moves Phi mod p^m to the lift centered at z and checks that its order at
/// z is >= -alpha1 (>= 0 when every exponent is 0, holomorphic when z is not
/// a pole) and that v_p(Phi') >= v_p(Phi) + c.
LiftCheckReport local_lift_phi_check(const Connection& conn, const FrobeniusData& data, const Rational& z,
                                     int m, int window = kDefaultWindow);

struct DeltaViolation {
  long i = 0;
  long value = 0;
  long bound = 0;
};

struct DeltaCheckReport {
  long i_max = 0;
  std::vector<long> values;  // v_on_V(Delta^(i)), i = 0..i_max
  std::vector<long> bounds;  // f(i)
  std::vector<DeltaViolation> violations;
};

/// v_on_V(Delta^(i)) >= f(i) for i <= i_max. Requires vN >= 0.
DeltaCheckReport delta_valuation_check(const Connection& conn, const BoundProfile& profile, long i_max);

}  // namespace frobound
