// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobound/connection/connection.hpp"

namespace frobound {

/// Pole order of N dt at z (0 when regular). At infinity the form is
/// -N(1/s) ds / s^2.
long pole_order(const Connection& conn, const Point& z);

/// (t - z) N evaluated at z; at infinity the residue of -N(1/s)/s^2 at s = 0.
/// Throws UnsupportedInput for a pole of order >= 2.
RationalMatrix residue_matrix(const Connection& conn, const Point& z);

/// Eigenvalues with multiplicity, ascending. Throws UnsupportedInput when the
/// characteristic polynomial does not split over Q.
std::vector<Rational> eigenvalues(const RationalMatrix& a);
std::vector<Rational> exponents(const Connection& conn, const Point& z);

struct ResidueData {
  Point z;
  RationalMatrix residue;
  std::vector<Rational> exponents;
  /// Columns are primitive integer eigenvectors ordered as `exponents`;
  /// absent when the residue is not diagonalizable.
  std::optional<RationalMatrix> diagonalizer;
};

ResidueData residue_data(const Connection& conn, const Point& z);

/// v_p(S) + v_p(S^{-1}).
long diagonalizer_valuation_sum(const RationalMatrix& s, long p);

struct HypothesisCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct ValidationReport {
  Point z;
  /// z is not a pole; every check passes vacuously.
  bool no_pole = false;
  std::vector<HypothesisCheck> checks;
  bool all_passed() const;
};

/// Checks (a) simple pole, (b) exponents in Q and p-integral, (c) no other
/// singular point in the residue disc of z, (d) z p-integral. Never throws
/// for hypothesis failures.
ValidationReport validate_theorem_hypotheses(const Connection& conn, const Point& z);

}  // namespace frobound
