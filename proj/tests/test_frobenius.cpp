// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>

#include "frobound/connection/residue.hpp"
#include "frobound/frobenius/cache.hpp"
#include "frobound/frobenius/fiber.hpp"
#include "frobound/frobenius/lift.hpp"
#include "oracles.hpp"

using namespace frobound;

namespace {

// Integer representative of a mod p^k.
Integer mod(const Integer& a, const Integer& pk) {
  Integer r = a % pk;
  if (r < 0) r += pk;
  return r;
}

// Integers e with phi = e mod p^k are read off a PAdicApprox.
long symmetric(const Integer& a, const Integer& pk) {
  Integer r = mod(a, pk);
  if (2 * r > pk) r -= pk;
  return r.get_si();
}

const FrobeniusData& example_data(long p, int M, std::size_t K) {
  static std::map<std::tuple<long, int, std::size_t>, FrobeniusData> memo;
  auto key = std::make_tuple(p, M, K);
  auto it = memo.find(key);
  if (it == memo.end()) it = memo.emplace(key, compute_frobenius(elliptic_example(p), M, K, 5)).first;
  return it->second;
}

RatFuncMatrix zero2() { return RatFuncMatrix(2, 2, RatFunc(0)); }

std::filesystem::path fresh_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("frobound-test-" + name);
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("fiber Frobenius matches point counts") {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    FiberFrobenius f = kedlaya_fiber_matrix(elliptic_example_fiber(0, p, 6));
    const long a = oracle::trace_by_point_count(1, 1, 1, p);
    CHECK(f.a_p == a);
    const Integer pM = ipow(p, 6);
    auto cp = characteristic_polynomial(f.phi0);
    CHECK(mod(cp[0].mantissa(), pM) == p);
    CHECK(mod(cp[1].mantissa() + a, pM) == 0);
    CHECK(mod(cp[2].mantissa(), pM) == 1);
    CHECK(valuation(f.phi0).value() == 0);
    CHECK(inverse_valuation(f.phi0).value() == -1);
    CHECK(val_p(determinant(f.phi0).mantissa(), p).value() == 1);
  }
  // other smooth fibers
  for (long p : {5L, 7L})
    for (long t : {1L, 2L, 3L}) {
      FiberCurve c = elliptic_example_fiber(t, p, 4);
      if (val_p(c.discriminant(), p).value() > 0) continue;
      CHECK(kedlaya_fiber_matrix(c).a_p == oracle::trace_by_point_count(1, t + 1, t + 1, p));
    }
}

TEST_CASE("singular fibers are rejected") {
  // t = -1 gives x^3 + 1, singular in characteristic 3
  CHECK_THROWS_AS(kedlaya_fiber_matrix(elliptic_example_fiber(-1, 3, 4)), UnsupportedInput);
  CHECK_THROWS_AS(kedlaya_fiber_matrix(elliptic_example_fiber(0, 2, 4)), UnsupportedInput);
}

TEST_CASE("working precision") {
  CHECK(working_precision(3, 17, 1024, 5) == 29);
  CHECK(working_precision(5, 6, 256, 5) == 15);
}

TEST_CASE("fundamental solution on trivial and scalar connections") {
  Connection zero(3, zero2());
  auto c = exact_fundamental_solution(zero, 8);
  CHECK(c[0] == rational_identity(2));
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k] == RationalMatrix(2, 2, Rational(0)));

  // C' = C: the exponential series, whose denominators pick up p at k = p, p^2
  Connection minus_one(3, RatFuncMatrix(1, 1, RatFunc(-1)));
  auto e = exact_fundamental_solution(minus_one, 12);
  Rational fact = 1;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k > 0) fact *= static_cast<long>(k);
    CHECK(e[k](0, 0) == 1 / fact);
  }
  auto scaled = fundamental_solution(minus_one, make_ring(3, 10), 12);
  CHECK(scaled.shift == val_p(Rational(fact), 3).value());
}

TEST_CASE("fundamental solution satisfies the ODE") {
  Connection conn = elliptic_example(3);
  auto ring = make_ring(3, 12);
  ScaledSolution c = fundamental_solution(conn, ring, 20);
  SeriesMatrix n = to_series(conn.matrix(), ring, 20);
  SeriesMatrix lhs = derivative(c.scaled) + truncated(multiply(n, c.scaled), 19);
  for (const auto& e : lhs.entries())
    for (std::size_t k = 0; k < e.length(); ++k) CHECK(e.mantissa(k) == 0);
  ScaledSolution d = inverse_fundamental_solution(conn, ring, 20);
  SeriesMatrix prod = multiply(c.scaled, d.scaled);
  const Integer scale = ipow(3, static_cast<unsigned long>(c.shift + d.shift));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 20; ++k)
        CHECK(prod(i, j).mantissa(k) == ring->reduce(Integer(k == 0 && i == j ? scale : Integer(0))));
}

TEST_CASE("deformation with N = 0 is constant") {
  Connection zero(3, zero2());
  const int mw = working_precision(3, 4, 64, 5);
  auto ring = make_ring(3, mw);
  PAdicMatrix phi0 = to_padic(RationalMatrix(2, 2, std::vector<Rational>{2, 1, 3, 6}), ring);
  FrobeniusData d = deformation_phi(zero, phi0, 4, 64, 5);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(d.phi(i, j).mantissa(0) == phi0(i, j).mantissa());
      for (std::size_t k = 1; k < 64; ++k) CHECK(d.phi(i, j).mantissa(k) == 0);
    }
  Valuation r = frobeq_residual(zero, d);
  CHECK(r.is_lower_bound());
}

TEST_CASE("deformation of the example family") {
  const FrobeniusData& d = example_data(3, 6, 256);
  CHECK(d.acc >= d.M);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(mod(d.phi(i, j).mantissa(0) - d.phi0(i, j).mantissa(), ipow(3, d.acc)) == 0);
  Connection conn = elliptic_example(3);
  CHECK(frobeq_residual(conn, d).value() >= d.acc);

  // tr N = 0, so det Phi(t) is the constant det Phi0
  SeriesMatrix phi = d.phi_mod(d.M);
  TruncSeries det = phi(0, 0) * phi(1, 1) - phi(0, 1) * phi(1, 0);
  const Integer pM = ipow(3, d.M);
  CHECK(mod(det.mantissa(0) - determinant(d.phi0).mantissa(), pM) == 0);
  for (std::size_t k = 1; k < det.length(); ++k) CHECK(det.mantissa(k) == 0);

  // a perturbation by p^j in one coefficient shows up in the residual
  for (int j : {2, 4}) {
    SeriesMatrix bumped = d.phi_mod(d.acc);
    PAdicApprox c = bumped(0, 1).coefficient(7);
    bumped(0, 1).set_coefficient(7, c + PAdicApprox::from_integer(c.ring(), ipow(3, j)));
    CHECK(frobeq_residual(conn, bumped).value() <= j);
  }
}

TEST_CASE("Phi does not depend on the precision buffer") {
  Connection conn = elliptic_example(5);
  FrobeniusData a = compute_frobenius(conn, 6, 256, 5);
  FrobeniusData b = compute_frobenius(conn, 6, 256, 8);
  CHECK(a.phi_mod(6) == b.phi_mod(6).map([&](const TruncSeries& x) { return x.reduce_to(a.phi_mod(6)(0, 0).ring()); }));
}

TEST_CASE("specialization at Teichmueller points matches point counts") {
  const int m = 3;
  for (long p : {5L, 7L}) {
    Connection conn = elliptic_example(p);
    const FrobeniusData& d = example_data(p, 4, 512);
    std::vector<ClearedPoint> poles;
    for (Rational z : {Rational(2), Rational(-2)}) {
      BoundProfile pr = make_profile(conn, Point::at(z), 0, -1);
      poles.push_back({z, -order_bound(m, pr).bound + 4});
    }
    ModRatFuncMatrix rep = rational_reconstruction(d.phi_mod(m), poles, kDefaultWindow);
    const Integer pm = ipow(p, m);
    for (long tau : {1L, -1L}) {
      std::vector<Integer> e;
      for (const auto& num : rep.numerators.entries()) {
        Integer v = 0, x = 1;
        for (const auto& c : num) {
          v += c * x;
          x = x * tau;
        }
        e.push_back(v);
      }
      Integer den = 1;
      for (const auto& pl : rep.poles)
        for (long k = 0; k < pl.power; ++k) den *= Integer(tau) - Integer(pl.z.get_num());
      Integer inv;
      mpz_invert(inv.get_mpz_t(), mod(den, pm).get_mpz_t(), pm.get_mpz_t());
      for (auto& v : e) v = mod(v * inv, pm);
      const long trace = symmetric(e[0] + e[3], pm);
      const Integer det = mod(e[0] * e[3] - e[1] * e[2], pm);
      CHECK(trace == oracle::trace_by_point_count(1, tau + 1, tau + 1, p));
      CHECK(det == p);
    }
  }
}

TEST_CASE("change of lift: trivial cases") {
  const FrobeniusData& d = example_data(3, 6, 256);
  Connection conn = elliptic_example(3);
  BoundProfile pr = make_profile(conn, Point::at(-2), 0, -1);
  SeriesMatrix phi = d.phi_mod(4);
  CHECK(change_frobenius_lift(phi, conn, d.lift, d.lift, pr).phi == phi);

  Connection zero(3, zero2());
  auto ring = make_ring(3, 4);
  SeriesMatrix constant = series_identity(ring, 2, 64);
  BoundProfile pz = make_profile(zero, Point::at(1), 0, 0);
  auto moved = change_frobenius_lift(constant, zero, FrobeniusLift::standard(), FrobeniusLift::centered_at(1), pz);
  CHECK(moved.phi == constant);

  CHECK_THROWS_AS(change_frobenius_lift(phi, conn, d.lift, FrobeniusLift::centered_at(Rational(1, 3)), pr),
                  ArithmeticError);
}

TEST_CASE("change of lift there and back") {
  Connection conn = elliptic_example(3);
  const FrobeniusData& d = example_data(3, 6, 256);
  BoundProfile pr = make_profile(conn, Point::at(2), 0, -1);
  const long loss = -c_value(pr);
  for (int m = 1; m <= 5; ++m) {
    SeriesMatrix phi = d.phi_mod(m);
    for (Rational z : {Rational(-2), Rational(2), Rational(5)}) {
      auto l2 = FrobeniusLift::centered_at(z);
      auto there = change_frobenius_lift(phi, conn, d.lift, l2, pr);
      auto back = change_frobenius_lift(there.phi, conn, l2, d.lift, pr);
      auto r = make_ring(3, static_cast<int>(m - loss));
      CHECK(back.phi.map([&](const TruncSeries& x) { return x.reduce_to(r); }) ==
            phi.map([&](const TruncSeries& x) { return x.reduce_to(r); }));
    }
  }
}

TEST_CASE("centered lifts have the orders of the local theory") {
  Connection conn = elliptic_example(3);
  const FrobeniusData& d = example_data(3, 5, 512);
  for (int m = 1; m <= 5; ++m) {
    LiftCheckReport a = local_lift_phi_check(conn, d, -2, m);
    CHECK(a.passed);
    CHECK(a.order.value() >= 0);
    LiftCheckReport b = local_lift_phi_check(conn, d, 2, m);
    CHECK(b.passed);
    CHECK(b.order.value() >= -1);
    if (m >= 2) CHECK(b.order.value() == -1);
    LiftCheckReport c = local_lift_phi_check(conn, d, 3, m);
    CHECK(c.passed);
    CHECK(c.order.value() >= 0);
  }
  Connection c5 = elliptic_example(5);
  const FrobeniusData& d5 = example_data(5, 3, 512);
  LiftCheckReport h = local_lift_phi_check(c5, d5, 1, 3);
  CHECK(h.passed);
  CHECK(h.order.value() >= 0);
}

TEST_CASE("divided powers respect the digit bound") {
  Connection conn = elliptic_example(3);
  BoundProfile pr = make_profile(conn, Point::at(-2), 0, -1);
  DeltaCheckReport rep = delta_valuation_check(conn, pr, 60);
  CHECK(rep.violations.empty());
  CHECK(rep.values[0] == 0);
  CHECK(rep.bounds[0] == 0);
  for (long i = 3; i < 9; ++i) CHECK(rep.values[static_cast<std::size_t>(i)] >= -1);
  for (long i = 9; i < 27; ++i) CHECK(rep.values[static_cast<std::size_t>(i)] >= -2);

  Connection zero(3, zero2());
  DeltaCheckReport z = delta_valuation_check(zero, make_profile(zero, Point::at(1), 0, 0), 10);
  CHECK(z.violations.empty());
  for (std::size_t i = 1; i < z.values.size(); ++i) CHECK(z.values[i] >= Valuation::kInfinity);
}

TEST_CASE("cache round trip and determinism") {
  const FrobeniusData& d = example_data(3, 6, 256);
  std::string text = serialize_cache(d);
  CHECK(text.rfind("FROBCACHE1\n", 0) == 0);
  FrobeniusData back = parse_cache(text);
  CHECK(back.acc == d.acc);
  CHECK(back.Mw == d.Mw);
  CHECK(back.phi_mod(d.acc) == d.phi_mod(d.acc));
  CHECK(serialize_cache(back) == text);

  auto dir = fresh_dir("cache");
  auto path = write_cache(dir, d);
  CHECK(path.filename() == "elliptic-example_p3_M6_K256_B5_standard.frobcache");
  auto hit = read_cache(dir, CacheKey::of(d));
  REQUIRE(hit.has_value());
  CHECK(serialize_cache(*hit) == text);

  CacheKey other = CacheKey::of(d);
  other.buffer = 8;
  CHECK_FALSE(read_cache(dir, other).has_value());

  // a corrupted file is a miss, not an error
  {
    std::ofstream(path, std::ios::trunc) << "FROBCACHE1\nfamily=x\n";
  }
  CHECK_FALSE(read_cache(dir, CacheKey::of(d)).has_value());

  // threads do not change the bytes
  Connection conn = elliptic_example(3);
  set_thread_count(1);
  std::string one = serialize_cache(compute_frobenius(conn, 4, 128, 5));
  set_thread_count(4);
  std::string four = serialize_cache(compute_frobenius(conn, 4, 128, 5));
  set_thread_count(1);
  CHECK(one == four);

  auto dir2 = fresh_dir("cache2");
  auto first = load_or_compute_frobenius(conn, 4, 128, 5, dir2);
  auto second = load_or_compute_frobenius(conn, 4, 128, 5, dir2);
  CHECK_FALSE(first.hit);
  CHECK(second.hit);
  CHECK(serialize_cache(second.data) == one);
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(dir2);

  CacheKey odd{"file:/tmp/my conn.txt", 3, 4, 64, 5, FrobeniusLift::centered_at(Rational(-2))};
  CHECK(odd.file_name() == "file__tmp_my_conn.txt_p3_M4_K64_B5_centered_-2.frobcache");
}
