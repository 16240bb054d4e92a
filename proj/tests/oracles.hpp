// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations used by the tests. None of these
// call into the library under test.
#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

/// a_p = p + 1 - #E(F_p) for y^2 = x^3 + a2 x^2 + a1 x + a0, by counting.
inline long trace_by_point_count(long a0, long a1, long a2, long p) {
  auto mod = [p](long x) { return ((x % p) + p) % p; };
  std::vector<int> squares(static_cast<std::size_t>(p), 0);
  for (long y = 0; y < p; ++y) squares[static_cast<std::size_t>(mod(y * y))]++;
  long count = 1;  // point at infinity
  for (long x = 0; x < p; ++x) {
    long rhs = mod(mod(mod(x * x) * x) + mod(a2 * mod(x * x)) + mod(a1 * x) + a0);
    count += squares[static_cast<std::size_t>(rhs)];
  }
  return p + 1 - count;
}

/// floor(log_p i) for i >= 1 by repeated division; 0 for i = 0.
inline long floor_log(long p, long i) {
  long k = 0;
  while (i >= p) {
    i /= p;
    ++k;
  }
  return k;
}

/// Least k with p^k >= i; 0 for i <= 1.
inline long ceil_log(long p, long i) {
  long k = 0;
  long pk = 1;
  while (pk < i) {
    pk *= p;
    ++k;
  }
  return k;
}

struct Profile {
  long p, r, vN, vPhi, vPhiInv;
  bool include_zero = true;
};

inline long f(const Profile& q, long i) {
  const long s = q.vPhi + q.vPhiInv;
  const long a = s * ceil_log(q.p, i);
  const long b = (q.r - 1) * q.vN + s * floor_log(q.p, i);
  return a > b ? a : b;
}

inline long c(const Profile& q, long scan) {
  if (q.vN >= 0) return 0;
  long best = 0;
  for (long i = q.include_zero ? 0 : 1; i <= scan; ++i) best = std::min(best, i + f(q, i));
  return best;
}

/// Largest i <= scan with i + vPhi + c + f(i) < m, or -1 if none.
inline long g(const Profile& q, long m, long scan) {
  const long cc = c(q, scan);
  long best = -1;
  for (long i = q.include_zero ? 0 : 1; i <= scan; ++i)
    if (i + q.vPhi + cc + f(q, i) < m) best = i;
  return best;
}

/// Largest i <= scan with i - floor(log_p i) < m, the specialization for
/// v_p(Phi) = 0, v_p(Phi^-1) = -1, v_p(N) = 0.
inline long g_specialized(long p, long m, long scan) {
  long best = 0;
  for (long i = 0; i <= scan; ++i)
    if (i - floor_log(p, i) < m) best = i;
  return best;
}

}  // namespace oracle
