// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobound/bounds/bounds.hpp"
#include "frobound/frobenius/deformation.hpp"

namespace frobound {

/// A finite singular point other than the one being measured, with the power
/// of (t - z) used to clear its pole.
struct ClearedPoint {
  Rational z;
  long power = 0;
};

struct OrderMeasurement {
  /// Exact order, ">= window" when even o = W passes, infinite for Phi = 0.
  Valuation order = Valuation::infinite();
  long degree_cap = 0;
  int window = 0;
};

inline constexpr int kDefaultWindow = 24;
inline constexpr long kDefaultSlack = 8;

/// D_max = 2 * (sum of pole-order guesses) + 32.
long default_degree_cap(long guess_at_z, const std::vector<ClearedPoint>& others);

/// Largest o such that every nonzero entry of (t-z)^(-o) prod (t-z')^b Phi
/// mod p^m has zero coefficients in degrees (D_max, D_max + W]. phi lives in
/// Z/p^m; z must be a p-adic unit. Throws PrecisionError ("increase K") when
/// K <= D_max + W or no o in [-D_max, W] passes.
OrderMeasurement measure_series_order(const SeriesMatrix& phi, const Rational& z,
                                      const std::vector<ClearedPoint>& others, int window,
                                      long degree_cap);

/// measure_series_order on Phi mod p^m.
OrderMeasurement measured_order_at(const FrobeniusData& data, const Rational& z, int m,
                                   const std::vector<ClearedPoint>& others, int window,
                                   long degree_cap);

/// P / prod (t - z)^(a_z) with P a polynomial matrix over Z/p^m.
struct ModRatFuncMatrix {
  RingPtr ring;
  std::vector<ClearedPoint> poles;
  /// Entry polynomials, constant term first, trimmed.
  Matrix<std::vector<Integer>> numerators;

  /// Monic integer denominator prod (t - z)^(a_z).
  QPoly denominator() const;
  SeriesMatrix expand(std::size_t length) const;
  long numerator_degree() const;
};

/// Reconstructs Phi mod p^m from its expansion and pole orders (a_z >= 0);
/// verified by re-expansion mod t^(K - W).
ModRatFuncMatrix rational_reconstruction(const SeriesMatrix& phi, const std::vector<ClearedPoint>& poles,
                                         int window);

struct ExperimentRow {
  long p = 0;
  Rational z;
  long m = 0;
  Valuation measured = Valuation::infinite();
  long bound = 0;
  std::string variant;
  bool sharp = false;
  bool remark2_condition = false;
};

struct ExperimentOptions {
  long m_min = 1;
  long m_max = 1;
  int window = kDefaultWindow;
  /// <= 0 selects default_degree_cap.
  long degree_cap = 0;
  long slack = kDefaultSlack;
  IndexConvention convention = IndexConvention::IncludeZero;
  std::optional<long> vphi;
  std::optional<long> vphi_inv;
  std::vector<Rational> points = {Rational(2), Rational(-2)};
};

struct ExperimentTable {
  long p = 0;
  int M = 0;
  std::size_t K = 0;
  std::vector<ExperimentRow> rows;

  std::string csv() const;
  std::string json() const;
  std::string table() const;
  /// Rows with measured < bound.
  std::vector<ExperimentRow> violations() const;
};

/// Bound profile of the experiment at z: v_p(Phi) and v_p(Phi^{-1}) default to
/// the values computed from Phi0.
BoundProfile experiment_profile(const Connection& conn, const FrobeniusData& data, const Point& z,
                                const ExperimentOptions& opt);

ExperimentTable experiment_table(const Connection& conn, const FrobeniusData& data,
                                 const ExperimentOptions& opt);

}  // namespace frobound
