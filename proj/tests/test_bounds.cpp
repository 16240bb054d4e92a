// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <random>

#include "frobound/bounds/bounds.hpp"
#include "frobound/connection/residue.hpp"
#include "oracles.hpp"

using namespace frobound;

namespace {

BoundProfile example_profile(long p, ZCase zc = ZCase::GenericPole) {
  BoundProfile pr;
  pr.p = p;
  pr.r = 2;
  pr.vN = 0;
  pr.vPhi = 0;
  pr.vPhiInv = -1;
  pr.z_case = zc;
  return pr;
}

oracle::Profile to_oracle(const BoundProfile& pr) {
  return {pr.p, pr.r, pr.vN, pr.vPhi, pr.vPhiInv, pr.convention == IndexConvention::IncludeZero};
}

}  // namespace

TEST_CASE("f on the example profile") {
  BoundProfile pr = example_profile(3);
  CHECK(f_of_i(9, pr) == -2);
  CHECK(f_of_i(1, pr) == 0);
  CHECK(f_of_i(5, pr) == -1);
  CHECK(f_of_i(0, pr) == 0);
  for (long i = 3; i < 9; ++i) CHECK(f_of_i(i, pr) == -1);
  for (long i = 9; i < 27; ++i) CHECK(f_of_i(i, pr) == -2);
}

TEST_CASE("c on small profiles") {
  BoundProfile pr = example_profile(3);
  CHECK(c_value(pr) == 0);
  pr.vN = 5;
  CHECK(c_value(pr) == 0);
  // vN = -1, r = 2, s = 0: f(i) = max{0, -1} = 0, so i + f(i) >= 0
  pr.vN = -1;
  pr.vPhi = 0;
  pr.vPhiInv = 0;
  CHECK(c_value(pr) == 0);
  pr.vN = -3;
  pr.vPhiInv = -5;
  CHECK(c_value(pr) == oracle::c(to_oracle(pr), 100000));
  CHECK(c_value(pr) < 0);
}

TEST_CASE("g on the example profile") {
  CHECK(g_of_m(3, example_profile(3)).value == 3);
  CHECK(g_of_m(1, example_profile(3)).value == 0);
  CHECK(g_of_m(2, example_profile(5)).value == 1);
  for (long p : {3L, 5L, 7L})
    for (long m = 1; m <= 250; ++m) CHECK(g_of_m(m, example_profile(p)).value == oracle::g_specialized(p, m, 100000));
}

TEST_CASE("g and c agree with a naive scan on random profiles") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> prime_idx(0, 3);
  std::uniform_int_distribution<int> small(-4, 3);
  std::uniform_int_distribution<int> mdist(1, 40);
  const long primes[] = {3, 5, 7, 11};
  for (int trial = 0; trial < 30; ++trial) {
    BoundProfile pr;
    pr.p = primes[prime_idx(rng)];
    pr.r = 1 + (trial % 3);
    pr.vN = small(rng);
    pr.vPhi = small(rng);
    pr.vPhiInv = std::min<long>(small(rng), -pr.vPhi);
    pr.convention = trial % 4 == 0 ? IndexConvention::ExcludeZero : IndexConvention::IncludeZero;
    const auto q = to_oracle(pr);
    CHECK(c_value(pr) == oracle::c(q, 1000000));
    const long m = mdist(rng);
    const long naive = oracle::g(q, m, 1000000);
    GValue g = g_of_m(m, pr);
    CHECK(g.empty_set == (naive < 0));
    if (naive >= 0) CHECK(g.value == naive);
  }
}

TEST_CASE("certified scan limit covers the definition") {
  BoundProfile pr = example_profile(3);
  pr.vPhiInv = -4;
  const long limit = certified_scan_limit(10, pr);
  long first_bad = -1;
  for (long i = limit + 1; i < 200000 && first_bad < 0; ++i)
    if (i + f_of_i(i, pr) <= 10) first_bad = i;
  CHECK(first_bad == -1);
}

TEST_CASE("alpha1 and the vanishing threshold") {
  std::vector<Rational> quarter{Rational(-1, 4), Rational(1, 4)};
  CHECK(alpha1(quarter, 3) == 1);
  CHECK(alpha1(quarter, 7) == 2);
  for (long p : {3L, 5L, 7L, 11L, 13L}) CHECK(alpha1(quarter, p) == (p + 1) / 4);
  CHECK(alpha1({0, 0}, 5) == 0);
  CHECK(coefficient_vanishing_threshold({0, 0}, 3) == 0);
  CHECK(coefficient_vanishing_threshold(quarter, 3) == -1);
  CHECK(coefficient_vanishing_threshold({1, 2}, 5) == 3);
}

TEST_CASE("order bounds for the example family") {
  Connection c3 = elliptic_example(3);
  BoundProfile m2 = make_profile(c3, Point::at(-2), 0, -1);
  CHECK(m2.vN == 0);
  CHECK_FALSE(m2.vS_sum.has_value());
  for (long m = 1; m <= 10; ++m) {
    BoundRow row = order_bound(m, m2);
    CHECK(row.bound == -3 * g_of_m(m, m2).value);
    CHECK(row.variant() == "base");
  }

  // z = 2: S = [[5, 1], [1, 1]] has determinant 4, a unit for odd p
  for (long p : {3L, 5L, 7L}) {
    BoundProfile pr = make_profile(elliptic_example(p), Point::at(2), 0, -1);
    REQUIRE(pr.vS_sum.has_value());
    CHECK(*pr.vS_sum == 0);
    for (long m = 1; m <= 30; ++m) {
      BoundRow row = order_bound(m, pr);
      const long g = g_of_m(m, pr).value;
      const long a1 = (p + 1) / 4;
      if (row.remark2_condition && g > 0) {
        CHECK(row.bound == -(a1 + p * (g - 1)));
        CHECK(row.variant() == "remark2");
      } else {
        CHECK(row.bound == -(a1 + p * g));
      }
      CHECK(row.remark2_condition == (g >= m));
    }
  }
  // p = 5 without the diagonalizer refinement
  BoundProfile p5 = make_profile(elliptic_example(5), Point::at(2), 0, -1);
  p5.vS_sum.reset();
  for (long m = 1; m <= 12; ++m) CHECK(order_bound(m, p5).bound == -(1 + 5 * g_of_m(m, p5).value));
}

TEST_CASE("bound variants") {
  BoundProfile none = example_profile(5, ZCase::NoPole);
  for (const auto& row : bound_table(none, 1, 6)) {
    CHECK(row.bound == 0);
    CHECK(row.variant() == "no-pole");
  }
  BoundProfile zero = example_profile(3, ZCase::ZeroOrInfinity);
  zero.exponents = {Rational(-1, 2), 0};
  for (const auto& row : bound_table(zero, 1, 6)) CHECK(row.bound == -alpha1(zero.exponents, 3));

  BoundProfile teich = example_profile(5);
  teich.exponents = {0, 0};
  teich.teichmuller = true;
  BoundRow row = order_bound(4, teich);
  CHECK(row.teichmuller_applied);
  CHECK(row.bound == -4 * g_of_m(4, teich).value);
  CHECK(row.variant() == "teichmuller");
  CHECK(make_profile(elliptic_example(5), Point::at(1), 0, -1).z_case == ZCase::NoPole);
}

TEST_CASE("bounds are monotone in m") {
  for (long p : {3L, 5L, 7L}) {
    BoundProfile pr = make_profile(elliptic_example(p), Point::at(2), 0, -1);
    long prev_g = 0, prev_b = 1;
    for (long m = 1; m <= 60; ++m) {
      BoundRow row = order_bound(m, pr);
      CHECK(row.g >= prev_g);
      CHECK(row.bound <= prev_b);
      prev_g = row.g;
      prev_b = row.bound;
    }
  }
}

TEST_CASE("change of basis adjustment") {
  Connection conn = elliptic_example(3);
  const auto& sing = conn.singular_points();
  BoundRow row = order_bound(4, make_profile(conn, Point::at(-2), 0, -1));
  AdjustedBound same = basis_change_bound(row, ratfunc_identity(2), Point::at(-2), 3, sing);
  CHECK(same.precision == 4);
  CHECK(same.bound == row.bound);

  RatFuncMatrix lin = scaled(ratfunc_identity(2), RatFunc(QPoly::linear(Rational(-2))));
  AdjustedBound shifted = basis_change_bound(row, lin, Point::at(-2), 3, sing);
  CHECK(shifted.precision == 4);
  CHECK(shifted.bound == row.bound + 1 - 3);

  RatFuncMatrix three = scaled(ratfunc_identity(2), RatFunc(3));
  AdjustedBound p3 = basis_change_bound(row, three, Point::at(-2), 3, sing);
  CHECK(p3.precision == 4);
  CHECK(p3.bound == row.bound);
}

TEST_CASE("number of lift-change terms") {
  BoundProfile pr = example_profile(3);
  CHECK(lift_change_terms(5, pr) == 6);
  for (long m = 1; m <= 40; ++m) {
    const long I = lift_change_terms(m, pr);
    bool tail_ok = true;
    for (long i = I; i < I + 500; ++i) tail_ok = tail_ok && i + pr.vPhi + f_of_i(i, pr) >= m;
    CHECK(tail_ok);
    if (I > 0) CHECK(I - 1 + pr.vPhi + f_of_i(I - 1, pr) < m);
  }
}

TEST_CASE("profile validation") {
  BoundProfile bad = example_profile(3);
  bad.vPhi = 1;
  bad.vPhiInv = 0;
  CHECK_THROWS(bad.validate());
  BoundProfile frac = example_profile(3);
  frac.exponents = {Rational(1, 3)};
  CHECK_THROWS(frac.validate());
}
