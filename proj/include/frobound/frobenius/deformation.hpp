// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "frobound/connection/connection.hpp"

namespace frobound {

inline constexpr const char* kKernelVersion = "1";

/// A Frobenius lift on the t-line: t -> t^p, or t -> (t - z)^p + z.
struct FrobeniusLift {
  bool centered = false;
  Rational z = 0;

  static FrobeniusLift standard() { return {}; }
  static FrobeniusLift centered_at(const Rational& z) { return {true, z}; }
  /// sigma(t) as a polynomial.
  QPoly action(long p) const;
  /// "standard" or "centered:<z>".
  std::string str() const;
  friend bool operator==(const FrobeniusLift& a, const FrobeniusLift& b) {
    return a.centered == b.centered && (!a.centered || a.z == b.z);
  }
};

/// Mw = M + ceil(log_p K) + B.
int working_precision(long p, int M, std::size_t K, int buffer);

/// Taylor coefficients at 0 of the solution of C' = -N C, C(0) = I, computed
/// exactly.
std::vector<RationalMatrix> exact_fundamental_solution(const Connection& conn, std::size_t K);
/// Same for D = C^{-1}, which solves D' = D N.
std::vector<RationalMatrix> exact_inverse_solution(const Connection& conn, std::size_t K);

/// p^shift C reduced mod p^Mw, where shift = max(0, -min_k v_p(C_k)).
struct ScaledSolution {
  SeriesMatrix scaled;
  int shift = 0;
};
ScaledSolution fundamental_solution(const Connection& conn, const RingPtr& ring, std::size_t K);
ScaledSolution inverse_fundamental_solution(const Connection& conn, const RingPtr& ring, std::size_t K);

struct FrobeniusData {
  std::string family;
  long p = 3;
  int M = 1;
  int Mw = 1;
  std::size_t K = 0;
  int buffer = 5;
  /// Guaranteed accuracy of phi.
  int acc = 0;
  /// Phi(t) mod (p^Mw, t^K); digits above acc are not meaningful.
  SeriesMatrix phi;
  PAdicMatrix phi0;
  FrobeniusLift lift;

  /// Phi mod (p^m, t^K) for m <= acc.
  SeriesMatrix phi_mod(int m) const;
};

/// Phi(t) = C(t) Phi0 D(t^p) with D = C^{-1}. phi0 must be known mod p^Mw.
FrobeniusData deformation_phi(const Connection& conn, const PAdicMatrix& phi0, int M, std::size_t K,
                              int buffer);

/// Builtin family end to end: fiber matrix at t = 0 followed by the
/// deformation.
FrobeniusData compute_frobenius(const Connection& conn, int M, std::size_t K, int buffer);

/// Minimum valuation over degrees < K - p of N Phi + Phi' - p t^(p-1) Phi sigma(N),
/// all taken mod p^acc.
Valuation frobeq_residual(const Connection& conn, const FrobeniusData& data);
Valuation frobeq_residual(const Connection& conn, const SeriesMatrix& phi);

}  // namespace frobound
