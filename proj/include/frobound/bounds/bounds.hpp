// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobound/connection/connection.hpp"

namespace frobound {

enum class ZCase { NoPole, ZeroOrInfinity, GenericPole };
std::string to_string(ZCase c);

/// Whether the index set of c and g includes i = 0.
enum class IndexConvention { IncludeZero, ExcludeZero };

struct BoundProfile {
  long p = 3;
  long r = 2;
  long vN = 0;
  long vPhi = 0;
  long vPhiInv = 0;
  /// Exponents at z (empty when z is not a pole).
  std::vector<Rational> exponents;
  ZCase z_case = ZCase::GenericPole;
  bool teichmuller = false;
  /// v_p(S) + v_p(S^{-1}) for a diagonalizer of the residue at z.
  std::optional<long> vS_sum;
  IndexConvention convention = IndexConvention::IncludeZero;

  long s() const { return vPhi + vPhiInv; }
  /// Throws UnsupportedInput when an invariant fails.
  void validate() const;
};

/// max{S ceil(log_p i), (r-1) vN + S floor(log_p i)} with S = vPhi + vPhiInv;
/// both logs are 0 at i = 0.
long f_of_i(long i, const BoundProfile& profile);

long c_value(const BoundProfile& profile);

struct GValue {
  long value = 0;
  /// No admissible i; value is then 0.
  bool empty_set = false;
};

/// max{i : i + vPhi + c + f(i) < m}.
GValue g_of_m(long m, const BoundProfile& profile);

/// floor(-p min(lambda) + max(lambda)); 0 for no exponents.
long alpha1(const std::vector<Rational>& exponents, long p);

/// p min(lambda) - max(lambda).
Rational coefficient_vanishing_threshold(const std::vector<Rational>& exponents, long p);

struct BoundRow {
  long m = 0;
  long alpha1 = 0;
  long alpha2 = 0;
  long g = 0;
  bool g_empty = false;
  long bound = 0;
  bool teichmuller_applied = false;
  /// vS_sum is present and g + vPhi + c + vS_sum >= m.
  bool remark2_condition = false;
  bool remark2_applied = false;
  bool no_pole = false;
  /// "base", "teichmuller", "remark2", "teichmuller+remark2" or "no-pole".
  std::string variant() const;
};

BoundRow order_bound(long m, const BoundProfile& profile);
std::vector<BoundRow> bound_table(const BoundProfile& profile, long m_min, long m_max);

struct AdjustedBound {
  long precision = 0;
  long bound = 0;
};

/// Effect of the basis change W on a bound at z; valuations of W and W^{-1}
/// are taken on V, i.e. with the discs of `singular` removed.
AdjustedBound basis_change_bound(const BoundRow& row, const RatFuncMatrix& w, const Point& z,
                                 long p, const std::vector<Point>& singular);

/// Least I with i + vPhi + f(i) >= m for every i >= I.
long lift_change_terms(long m, const BoundProfile& profile);

/// Profile of conn at z from computed valuations of the Frobenius matrix.
BoundProfile make_profile(const Connection& conn, const Point& z, long vPhi, long vPhiInv,
                          IndexConvention convention = IndexConvention::IncludeZero);

/// Upper end of a scan for i + f(i) <= threshold: every i beyond the returned
/// value satisfies i + f(i) > threshold.
long certified_scan_limit(long threshold, const BoundProfile& profile);

}  // namespace frobound
