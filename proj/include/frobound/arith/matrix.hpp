// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "frobound/arith/padic.hpp"
#include "frobound/arith/poly.hpp"
#include "frobound/arith/ratfunc.hpp"
#include "frobound/arith/series.hpp"
#include "frobound/errors.hpp"

namespace frobound {

/// Dense row-major matrix over any ring type with value semantics.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols) throw ArithmeticError("Matrix: entry count mismatch");
  }

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  T& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  const std::vector<T>& entries() const { return e_; }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(e_.size());
    for (const auto& x : e_) out.push_back(f(x));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  Matrix operator-() const {
    return map([](const T& x) { return T(-x); });
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_ || a.cols_ == 0) throw ArithmeticError("Matrix: shape mismatch in product");
    std::vector<T> out;
    out.reserve(a.rows_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) out.push_back(a.dot(i, b, j));
    return Matrix(a.rows_, b.cols_, std::move(out));
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  /// Row i of this times column j of b.
  T dot(std::size_t i, const Matrix& b, std::size_t j) const {
    T s = (*this)(i, 0) * b(0, j);
    for (std::size_t k = 1; k < cols_; ++k) s = s + (*this)(i, k) * b(k, j);
    return s;
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw ArithmeticError("Matrix: shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> e_;
};

using RationalMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<QPoly>;
using RatFuncMatrix = Matrix<RatFunc>;
using SeriesMatrix = Matrix<TruncSeries>;
using PAdicMatrix = Matrix<PAdicApprox>;

// ---- rational matrices

RationalMatrix rational_identity(std::size_t n);
/// Gauss-Jordan; throws ArithmeticError when singular.
RationalMatrix inverse(const RationalMatrix& a);
Rational determinant(const RationalMatrix& a);
/// det(T I - A), monic of degree r.
QPoly characteristic_polynomial(const RationalMatrix& a);
/// Basis of the right kernel, each vector scaled to a primitive integer vector
/// with positive first nonzero entry.
std::vector<std::vector<Rational>> kernel(const RationalMatrix& a);
std::size_t rank(const RationalMatrix& a);
/// Entrywise minimum of v_p; infinite for the zero matrix.
Valuation valuation(const RationalMatrix& a, long p);
std::string str(const RationalMatrix& a);

// ---- rational-function matrices

RatFuncMatrix ratfunc_identity(std::size_t n);
RatFuncMatrix to_ratfunc(const RationalMatrix& a);
RationalMatrix evaluate(const RatFuncMatrix& a, const Rational& z);
RatFuncMatrix derivative(const RatFuncMatrix& a);
RatFuncMatrix compose(const RatFuncMatrix& a, const QPoly& inner);
RatFuncMatrix scaled(const RatFuncMatrix& a, const RatFunc& s);
RatFunc determinant(const RatFuncMatrix& a);
/// Throws ArithmeticError when the determinant is zero.
RatFuncMatrix inverse(const RatFuncMatrix& a);
/// Minimum over nonzero entries of ord_z; infinite for the zero matrix.
Valuation order_at(const RatFuncMatrix& a, const Rational& z);
Valuation order_at_infinity(const RatFuncMatrix& a);
/// Entrywise minimum Gauss valuation.
Valuation gauss_valuation(const RatFuncMatrix& a, long p);
/// Monic lcm of the entry denominators.
QPoly common_denominator(const RatFuncMatrix& a);
std::string str(const RatFuncMatrix& a);

// ---- series matrices

/// Thread count for series matrix products; results do not depend on it.
void set_thread_count(unsigned n);
unsigned thread_count();

SeriesMatrix series_identity(const RingPtr& ring, std::size_t n, std::size_t length);
SeriesMatrix series_zero(const RingPtr& ring, std::size_t n, std::size_t length);
SeriesMatrix to_series(const RatFuncMatrix& a, const RingPtr& ring, std::size_t length);
/// Product with entries computed in parallel.
SeriesMatrix multiply(const SeriesMatrix& a, const SeriesMatrix& b);
/// Requires the constant-term matrix to be invertible mod p.
SeriesMatrix inverse(const SeriesMatrix& a);
SeriesMatrix derivative(const SeriesMatrix& a);
SeriesMatrix frobenius_substitute(const SeriesMatrix& a);
SeriesMatrix truncated(const SeriesMatrix& a, std::size_t length);
SeriesMatrix scaled(const SeriesMatrix& a, const PAdicApprox& s);
SeriesMatrix reduce_to(const SeriesMatrix& a, const RingPtr& smaller);
Valuation valuation(const SeriesMatrix& a);
int accuracy(const SeriesMatrix& a);
std::size_t length(const SeriesMatrix& a);
/// Coefficient matrix of t^k.
PAdicMatrix coefficient(const SeriesMatrix& a, std::size_t k);

// ---- p-adic matrices

PAdicMatrix to_padic(const RationalMatrix& a, const RingPtr& ring);
PAdicApprox determinant(const PAdicMatrix& a);
/// det(T I - A); coefficient of T^k at index k.
std::vector<PAdicApprox> characteristic_polynomial(const PAdicMatrix& a);
Valuation valuation(const PAdicMatrix& a);
/// v_p(A^{-1}) from the adjugate and the determinant; requires a
/// determinant known to be nonzero mod p^acc.
Valuation inverse_valuation(const PAdicMatrix& a);
PAdicMatrix adjugate(const PAdicMatrix& a);
int accuracy(const PAdicMatrix& a);

}  // namespace frobound
