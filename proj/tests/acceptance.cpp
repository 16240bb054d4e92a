// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "frobound/connection/residue.hpp"
#include "frobound/frobenius/cache.hpp"
#include "frobound/frobenius/fiber.hpp"
#include "frobound/frobenius/lift.hpp"
#include "frobound/reconstruct/reconstruct.hpp"
#include "oracles.hpp"

using namespace frobound;

namespace {

constexpr std::size_t kK = 1024;

int m_max_for(long p) { return p == 3 ? 17 : 12; }

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Data shared by criteria 5-7 and 10.
struct Run {
  FrobeniusData data;
  ExperimentTable table;
};

std::map<long, Run>& runs() {
  static std::map<long, Run> r;
  return r;
}

const Run& run_for(long p) {
  auto it = runs().find(p);
  if (it != runs().end()) return it->second;
  Connection conn = elliptic_example(p);
  FrobeniusData d = compute_frobenius(conn, m_max_for(p), kK, 5);
  ExperimentOptions opt;
  opt.m_min = 1;
  opt.m_max = m_max_for(p);
  ExperimentTable t = experiment_table(conn, d, opt);
  return runs().emplace(p, Run{std::move(d), std::move(t)}).first->second;
}

std::string set_str(const std::set<long>& s) {
  std::string out = "{";
  for (long x : s) out += (out.size() > 1 ? "," : "") + std::to_string(x);
  return out + "}";
}

Outcome exponents_exact() {
  Outcome o;
  for (long p : {3L, 5L, 7L}) {
    Connection conn = elliptic_example(p);
    auto e2 = exponents(conn, Point::at(2));
    auto em2 = exponents(conn, Point::at(-2));
    if (e2 != std::vector<Rational>{Rational(-1, 4), Rational(1, 4)} || em2 != std::vector<Rational>{0, 0}) {
      o.passed = false;
      o.detail += "p=" + std::to_string(p) + " mismatch; ";
    }
  }
  if (o.passed) o.detail = "z=2 {-1/4,1/4}, z=-2 {0,0}";
  return o;
}

Outcome bound_formulas() {
  Outcome o;
  long checked = 0;
  for (long p : {3L, 5L, 7L}) {
    BoundProfile pr = make_profile(elliptic_example(p), Point::at(-2), 0, -1);
    for (long m = 1; m <= 250; ++m, ++checked)
      if (g_of_m(m, pr).value != oracle::g_specialized(p, m, 20000)) {
        o.passed = false;
        o.detail += "g mismatch p=" + std::to_string(p) + " m=" + std::to_string(m) + "; ";
      }
  }
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    BoundProfile pr = make_profile(elliptic_example(p), Point::at(2), 0, -1);
    if (alpha1(pr.exponents, p) != (p + 1) / 4) {
      o.passed = false;
      o.detail += "alpha1 mismatch p=" + std::to_string(p) + "; ";
    }
  }
  if (o.passed) o.detail = std::to_string(checked) + " values of g, alpha1 for p<=13";
  return o;
}

Outcome fiber_oracle() {
  Outcome o;
  for (long p : {3L, 5L, 7L}) {
    const int M = 6;
    FiberFrobenius f = kedlaya_fiber_matrix(elliptic_example_fiber(0, p, M));
    const long a = oracle::trace_by_point_count(1, 1, 1, p);
    const Integer pM = ipow(p, M);
    auto cp = characteristic_polynomial(f.phi0);
    auto red = [&](const Integer& x) {
      Integer r = x % pM;
      return r < 0 ? Integer(r + pM) : r;
    };
    const bool cp_ok = red(cp[0].mantissa()) == p && red(cp[1].mantissa() + a) == 0 && red(cp[2].mantissa()) == 1;
    const bool v_ok = valuation(f.phi0).value() == 0 && inverse_valuation(f.phi0).value() == -1;
    if (!cp_ok || !v_ok) o.passed = false;
    o.detail += "a_" + std::to_string(p) + "=" + std::to_string(a) + (cp_ok && v_ok ? " " : "(FAIL) ");
  }
  return o;
}

Outcome frobenius_equation() {
  Outcome o;
  for (long p : {3L, 5L, 7L}) {
    Connection conn = elliptic_example(p);
    FrobeniusData d = compute_frobenius(conn, 6, 256, 5);
    Valuation r = frobeq_residual(conn, d);
    if (r.value() < d.acc) o.passed = false;
    o.detail += "p=" + std::to_string(p) + ": " + r.str() + " vs acc " + std::to_string(d.acc) + "; ";
  }
  return o;
}

Outcome soundness() {
  Outcome o;
  long rows = 0;
  for (long p : {3L, 5L, 7L}) {
    const Run& r = run_for(p);
    rows += static_cast<long>(r.table.rows.size());
    for (const auto& v : r.table.violations()) {
      o.passed = false;
      o.detail += "p=" + std::to_string(p) + " z=" + to_string(v.z) + " m=" + std::to_string(v.m) + " measured " +
                  v.measured.str() + " < " + std::to_string(v.bound) + "; ";
    }
  }
  if (o.passed) o.detail = std::to_string(rows) + " (p, z, m) rows, no violation";
  return o;
}

Outcome sharpness() {
  Outcome o;
  const std::map<long, std::pair<long, std::set<long>>> expect = {
      {3, {17, {1, 2, 3, 6, 8, 17}}}, {5, {10, {1, 2, 3, 4, 5, 10}}}, {7, {7, {1, 2, 3, 4, 5, 6, 7}}}};
  for (const auto& [p, want] : expect) {
    std::set<long> got;
    for (const auto& row : run_for(p).table.rows)
      if (row.z == -2 && row.m <= want.first && row.sharp) got.insert(row.m);
    if (got != want.second) o.passed = false;
    o.detail += "p=" + std::to_string(p) + " " + set_str(got) + (got == want.second ? " " : "(FAIL) ");
  }
  return o;
}

Outcome orders_at_two() {
  Outcome o;
  const std::map<long, long> lead = {{3, 1}, {5, 1}, {7, 2}};
  for (const auto& [p, a] : lead) {
    long equal = 0, total = 0;
    bool below = false;
    for (const auto& row : run_for(p).table.rows) {
      if (row.z != 2 || row.m < 2 || row.m > 8) continue;
      const long pattern = a - p * (row.m - 1);
      ++total;
      if (row.measured == Valuation::exact(pattern)) ++equal;
      if (row.measured.value() < pattern) below = true;
    }
    const bool ok = !below && 2 * equal >= total && total == 7;
    if (!ok) o.passed = false;
    o.detail += "p=" + std::to_string(p) + " " + std::to_string(equal) + "/" + std::to_string(total) + " equal" +
                (below ? " (below pattern)" : "") + "; ";
  }
  return o;
}

Outcome delta_property() {
  Connection conn = elliptic_example(3);
  BoundProfile pr = make_profile(conn, Point::at(-2), 0, -1);
  DeltaCheckReport rep = delta_valuation_check(conn, pr, 200);
  Outcome o;
  o.passed = rep.violations.empty() && rep.values.size() == 201;
  o.detail = std::to_string(rep.values.size()) + " matrices, " + std::to_string(rep.violations.size()) + " violations";
  return o;
}

Outcome lift_cross_check() {
  Outcome o;
  Connection conn = elliptic_example(3);
  FrobeniusData d = compute_frobenius(conn, 5, 512, 5);
  const long a1 = alpha1(exponents(conn, Point::at(2)), 3);
  std::string minus, plus;
  for (int m = 1; m <= 5; ++m) {
    LiftCheckReport lm = local_lift_phi_check(conn, d, -2, m);
    LiftCheckReport lp = local_lift_phi_check(conn, d, 2, m);
    if (!lm.passed || lm.order.value() < 0) o.passed = false;
    if (!lp.passed || lp.order.value() < -a1) o.passed = false;
    minus += (m > 1 ? "," : "") + lm.order.str();
    plus += (m > 1 ? "," : "") + lp.order.str();
  }
  o.detail = "orders at -2: " + minus + "; at 2: " + plus + " (alpha1=" + std::to_string(a1) + ")";
  return o;
}

Outcome precision_stability() {
  Outcome o;
  for (long p : {3L, 5L, 7L}) {
    Connection conn = elliptic_example(p);
    const Run& r = run_for(p);
    FrobeniusData b8 = compute_frobenius(conn, m_max_for(p), kK, 8);
    const int M = r.data.M;
    SeriesMatrix a = r.data.phi_mod(M);
    SeriesMatrix b = b8.phi_mod(M).map([&](const TruncSeries& x) { return x.reduce_to(a(0, 0).ring()); });
    if (!(a == b)) {
      o.passed = false;
      o.detail += "p=" + std::to_string(p) + " B=5/B=8 differ; ";
    }
  }
  // cache bytes across runs and thread counts
  Connection conn = elliptic_example(3);
  std::vector<std::string> files;
  for (unsigned threads : {1u, 4u, 1u}) {
    set_thread_count(threads);
    auto dir = std::filesystem::temp_directory_path() /
               ("frobound-acceptance-" + std::to_string(files.size()) + "-" + std::to_string(threads));
    std::filesystem::remove_all(dir);
    auto c = load_or_compute_frobenius(conn, 17, kK, 5, dir);
    std::ifstream in(c.path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files.push_back(ss.str());
    std::filesystem::remove_all(dir);
  }
  set_thread_count(std::max(1u, std::thread::hardware_concurrency()));
  if (files[0] != files[1] || files[1] != files[2]) {
    o.passed = false;
    o.detail += "cache bytes differ; ";
  }
  if (o.passed) o.detail = "B=5 and B=8 agree mod p^M for p=3,5,7; cache bytes identical (3 runs, 1/4 threads)";
  return o;
}

}  // namespace

int main() {
  set_thread_count(std::max(1u, std::thread::hardware_concurrency()));
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exponents", 1, exponents_exact},
      {2, "bound formulas", 1, bound_formulas},
      {3, "fiber oracle", 10, fiber_oracle},
      {4, "Frobenius equation", 360, frobenius_equation},
      {5, "theorem soundness", 900, soundness},
      {6, "sharpness at z=-2", 900, sharpness},
      {7, "orders at z=2", 900, orders_at_two},
      {8, "divided-power valuations", 120, delta_property},
      {9, "change-of-lift cross-check", 900, lift_cross_check},
      {10, "precision stability", 900, precision_stability},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.passed = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
    }
    if (!o.passed) ++failures;
    std::printf("[%s] %2d %-28s %7.2fs  %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
