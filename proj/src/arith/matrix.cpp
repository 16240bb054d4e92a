// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/arith/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

namespace frobound {

namespace {

std::atomic<unsigned> g_threads{1};

template <class T>
void require_square(const Matrix<T>& a, const char* what) {
  if (!a.is_square() || a.rows() == 0) throw ArithmeticError(std::string(what) + ": matrix must be square");
}

// Division-free Laplace expansion along the first row; the matrices here
// are tiny (r <= 6).
template <class T>
T cofactor_determinant(const Matrix<T>& a, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return a(rows[0], cols[0]);
  if (rows.size() == 2)
    return a(rows[0], cols[0]) * a(rows[1], cols[1]) - a(rows[0], cols[1]) * a(rows[1], cols[0]);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  std::optional<T> acc;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<std::size_t> sub_cols;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (c != k) sub_cols.push_back(cols[c]);
    T term = a(rows[0], cols[k]) * cofactor_determinant(a, sub_rows, sub_cols);
    if (k % 2 == 1) term = -term;
    acc = acc ? T(*acc + term) : term;
  }
  return *acc;
}

template <class T>
std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Elementary symmetric functions of the eigenvalues via principal minors.
template <class T>
std::vector<T> principal_minor_sums(const Matrix<T>& a, const T& zero) {
  const std::size_t n = a.rows();
  std::vector<T> e(n + 1, zero);
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1UL << i)) idx.push_back(i);
    e[idx.size()] = e[idx.size()] + cofactor_determinant(a, idx, idx);
  }
  return e;
}

Valuation min_entry_valuation(const std::vector<Valuation>& vs) {
  Valuation v = Valuation::infinite();
  for (const auto& x : vs) v = min(v, x);
  return v;
}

}  // namespace

// ---- rational matrices

RationalMatrix rational_identity(std::size_t n) {
  return RationalMatrix::identity(n, Rational(0), Rational(1));
}

RationalMatrix inverse(const RationalMatrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  RationalMatrix m = a;
  RationalMatrix inv = rational_identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) throw ArithmeticError("inverse: singular rational matrix");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    Rational s = 1 / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Rational determinant(const RationalMatrix& a) {
  require_square(a, "determinant");
  const std::size_t n = a.rows();
  RationalMatrix m = a;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

QPoly characteristic_polynomial(const RationalMatrix& a) {
  require_square(a, "characteristic_polynomial");
  const std::size_t n = a.rows();
  auto e = principal_minor_sums(a, Rational(0));
  std::vector<Rational> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    Rational coeff = k == 0 ? Rational(1) : e[k];
    if (k % 2 == 1) coeff = -coeff;
    c[n - k] = coeff;
  }
  return QPoly(std::move(c));
}

std::vector<std::vector<Rational>> kernel(const RationalMatrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  RationalMatrix m = a;
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(piv, j));
    Rational s = 1 / m(r, c);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) *= s;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_of_col[c] = static_cast<long>(r);
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -m(static_cast<std::size_t>(pivot_of_col[c]), free);
    // primitive integer scaling
    Integer l = 1, g = 0;
    for (const auto& x : v) {
      Integer d = x.get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (auto& x : v) {
      x *= l;
      Integer n = x.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (*first < 0) g = -g;
    for (auto& x : v) x /= g;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const RationalMatrix& a) { return a.cols() - kernel(a).size(); }

Valuation valuation(const RationalMatrix& a, long p) {
  std::vector<Valuation> vs;
  for (const auto& x : a.entries())
    if (x != 0) vs.push_back(val_p(x, p));
  return min_entry_valuation(vs);
}

std::string str(const RationalMatrix& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << to_string(a(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---- rational-function matrices

RatFuncMatrix ratfunc_identity(std::size_t n) {
  return RatFuncMatrix::identity(n, RatFunc(0L), RatFunc(1L));
}

RatFuncMatrix to_ratfunc(const RationalMatrix& a) {
  return a.map([](const Rational& x) { return RatFunc(x); });
}

RationalMatrix evaluate(const RatFuncMatrix& a, const Rational& z) {
  return a.map([&](const RatFunc& f) { return f.evaluate(z); });
}

RatFuncMatrix derivative(const RatFuncMatrix& a) {
  return a.map([](const RatFunc& f) { return f.derivative(); });
}

RatFuncMatrix compose(const RatFuncMatrix& a, const QPoly& inner) {
  return a.map([&](const RatFunc& f) { return f.compose(inner); });
}

RatFuncMatrix scaled(const RatFuncMatrix& a, const RatFunc& s) {
  return a.map([&](const RatFunc& f) { return f * s; });
}

RatFunc determinant(const RatFuncMatrix& a) {
  require_square(a, "determinant");
  return cofactor_determinant(a, iota_vec<RatFunc>(a.rows()), iota_vec<RatFunc>(a.rows()));
}

RatFuncMatrix inverse(const RatFuncMatrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  RatFuncMatrix m = a;
  RatFuncMatrix inv = ratfunc_identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) throw ArithmeticError("inverse: singular rational-function matrix");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    RatFunc s = RatFunc(1L) / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) = m(c, j) * s;
      inv(c, j) = inv(c, j) * s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      RatFunc f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) = m(r, j) - f * m(c, j);
        inv(r, j) = inv(r, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

Valuation order_at(const RatFuncMatrix& a, const Rational& z) {
  std::vector<Valuation> vs;
  for (const auto& f : a.entries())
    if (!f.is_zero()) vs.push_back(f.order_at(z));
  return min_entry_valuation(vs);
}

Valuation order_at_infinity(const RatFuncMatrix& a) {
  std::vector<Valuation> vs;
  for (const auto& f : a.entries())
    if (!f.is_zero()) vs.push_back(f.order_at_infinity());
  return min_entry_valuation(vs);
}

Valuation gauss_valuation(const RatFuncMatrix& a, long p) {
  std::vector<Valuation> vs;
  for (const auto& f : a.entries())
    if (!f.is_zero()) vs.push_back(f.gauss_valuation(p));
  return min_entry_valuation(vs);
}

QPoly common_denominator(const RatFuncMatrix& a) {
  QPoly d(1);
  for (const auto& f : a.entries()) d = lcm(d, f.denominator());
  return d;
}

std::string str(const RatFuncMatrix& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << a(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---- series matrices

void set_thread_count(unsigned n) { g_threads = std::max(1u, n); }
unsigned thread_count() { return g_threads; }

SeriesMatrix series_zero(const RingPtr& ring, std::size_t n, std::size_t len) {
  return SeriesMatrix(n, n, TruncSeries(ring, len));
}

SeriesMatrix series_identity(const RingPtr& ring, std::size_t n, std::size_t len) {
  SeriesMatrix m = series_zero(ring, n, len);
  for (std::size_t i = 0; i < n; ++i) m(i, i).set_coefficient(0, PAdicApprox::one(ring));
  return m;
}

SeriesMatrix to_series(const RatFuncMatrix& a, const RingPtr& ring, std::size_t len) {
  return a.map([&](const RatFunc& f) { return ratfunc_to_series(f, ring, len); });
}

SeriesMatrix multiply(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.cols() != b.rows() || a.cols() == 0) throw ArithmeticError("multiply: shape mismatch");
  const std::size_t rows = a.rows(), cols = b.cols(), total = rows * cols;
  std::vector<std::optional<TruncSeries>> out(total);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t k = begin; k < total; k += step) out[k] = a.dot(k / cols, b, k % cols);
  };
  const unsigned nt = std::min<unsigned>(thread_count(), static_cast<unsigned>(total));
  if (nt <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work, t, nt);
    for (auto& th : pool) th.join();
  }
  std::vector<TruncSeries> entries;
  entries.reserve(total);
  for (auto& x : out) entries.push_back(std::move(*x));
  return SeriesMatrix(rows, cols, std::move(entries));
}

SeriesMatrix inverse(const SeriesMatrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows(), len = a(0, 0).length();
  const RingPtr& ring = a(0, 0).ring();
  const Integer& mod = ring->modulus();
  PAdicMatrix a0 = coefficient(a, 0);
  PAdicApprox det = determinant(a0);
  if (det.mantissa() % ring->prime() == 0)
    throw ArithmeticError("inverse: constant term of the series matrix is singular mod p");
  PAdicMatrix a0inv = adjugate(a0);
  PAdicApprox dinv = det.unit_inverse();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a0inv(i, j) = a0inv(i, j) * dinv;
  // raw mantissas: X_0 = A0^{-1}, X_k = -A0^{-1} sum_{j>=1} A_j X_{k-j}
  auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
  std::vector<std::vector<Integer>> x(len, std::vector<Integer>(n * n));
  std::vector<Integer> inv0(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv0[idx(i, j)] = a0inv(i, j).mantissa();
  x[0] = inv0;
  std::vector<Integer> s(n * n), t(n * n);
  for (std::size_t k = 1; k < len; ++k) {
    for (auto& v : s) v = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      const auto& xk = x[k - j];
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t q = 0; q < n; ++q) {
          const Integer& arq = a(r, q).mantissa(j);
          if (arq == 0) continue;
          for (std::size_t c = 0; c < n; ++c)
            mpz_addmul(s[idx(r, c)].get_mpz_t(), arq.get_mpz_t(), xk[idx(q, c)].get_mpz_t());
        }
    }
    for (auto& v : s) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Integer acc = 0;
        for (std::size_t q = 0; q < n; ++q)
          mpz_addmul(acc.get_mpz_t(), inv0[idx(r, q)].get_mpz_t(), s[idx(q, c)].get_mpz_t());
        acc = -acc;
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
        t[idx(r, c)] = std::move(acc);
      }
    x[k] = t;
  }
  // accuracy: prefix minimum over all entries of a, capped by a0inv's
  std::vector<int> acc(len);
  int running = accuracy(a0inv);
  for (std::size_t k = 0; k < len; ++k) {
    for (const auto& e : a.entries()) running = std::min(running, e.accuracy(k));
    acc[k] = running;
  }
  std::vector<TruncSeries> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Integer> c(len);
      for (std::size_t k = 0; k < len; ++k) c[k] = x[k][idx(i, j)];
      entries.emplace_back(ring, std::move(c), acc);
    }
  return SeriesMatrix(n, n, std::move(entries));
}

SeriesMatrix derivative(const SeriesMatrix& a) {
  return a.map([](const TruncSeries& f) { return f.derivative(); });
}

SeriesMatrix frobenius_substitute(const SeriesMatrix& a) {
  return a.map([](const TruncSeries& f) { return f.frobenius_substitute(); });
}

SeriesMatrix truncated(const SeriesMatrix& a, std::size_t len) {
  return a.map([&](const TruncSeries& f) { return f.truncated(len); });
}

SeriesMatrix scaled(const SeriesMatrix& a, const PAdicApprox& s) {
  return a.map([&](const TruncSeries& f) { return f.scaled(s); });
}

SeriesMatrix reduce_to(const SeriesMatrix& a, const RingPtr& smaller) {
  return a.map([&](const TruncSeries& f) { return f.reduce_to(smaller); });
}

Valuation valuation(const SeriesMatrix& a) {
  Valuation v = Valuation::infinite();
  for (const auto& f : a.entries()) v = min(v, f.valuation());
  return v;
}

int accuracy(const SeriesMatrix& a) {
  int acc = a(0, 0).ring()->precision();
  for (const auto& f : a.entries()) acc = std::min(acc, f.accuracy());
  return acc;
}

std::size_t length(const SeriesMatrix& a) { return a(0, 0).length(); }

PAdicMatrix coefficient(const SeriesMatrix& a, std::size_t k) {
  return a.map([&](const TruncSeries& f) { return f.coefficient(k); });
}

// ---- p-adic matrices

PAdicMatrix to_padic(const RationalMatrix& a, const RingPtr& ring) {
  return a.map([&](const Rational& x) { return PAdicApprox::from_rational(ring, x); });
}

PAdicApprox determinant(const PAdicMatrix& a) {
  require_square(a, "determinant");
  return cofactor_determinant(a, iota_vec<PAdicApprox>(a.rows()), iota_vec<PAdicApprox>(a.rows()));
}

std::vector<PAdicApprox> characteristic_polynomial(const PAdicMatrix& a) {
  require_square(a, "characteristic_polynomial");
  const std::size_t n = a.rows();
  const RingPtr& ring = a(0, 0).ring();
  auto e = principal_minor_sums(a, PAdicApprox::zero(ring));
  std::vector<PAdicApprox> c(n + 1, PAdicApprox::zero(ring));
  for (std::size_t k = 0; k <= n; ++k) {
    PAdicApprox coeff = k == 0 ? PAdicApprox::one(ring) : e[k];
    if (k % 2 == 1) coeff = -coeff;
    c[n - k] = coeff;
  }
  return c;
}

Valuation valuation(const PAdicMatrix& a) {
  Valuation v = Valuation::infinite();
  for (const auto& x : a.entries()) v = min(v, x.valuation());
  return v;
}

PAdicMatrix adjugate(const PAdicMatrix& a) {
  require_square(a, "adjugate");
  const std::size_t n = a.rows();
  const RingPtr& ring = a(0, 0).ring();
  PAdicMatrix adj(n, n, PAdicApprox::one(ring));
  if (n == 1) return adj;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      PAdicApprox m = cofactor_determinant(a, rows, cols);
      adj(i, j) = (i + j) % 2 ? -m : m;
    }
  return adj;
}

Valuation inverse_valuation(const PAdicMatrix& a) {
  PAdicApprox det = determinant(a);
  Valuation vd = det.valuation();
  if (vd.is_lower_bound() || vd.value() >= det.accuracy())
    throw PrecisionError("inverse_valuation: determinant not distinguishable from 0");
  Valuation va = valuation(adjugate(a));
  if (va.is_lower_bound()) return Valuation::at_least(va.value() - vd.value());
  return Valuation::exact(va.value() - vd.value());
}

int accuracy(const PAdicMatrix& a) {
  int acc = a(0, 0).ring()->precision();
  for (const auto& x : a.entries()) acc = std::min(acc, x.accuracy());
  return acc;
}

}  // namespace frobound
