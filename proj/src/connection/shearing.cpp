// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/connection/shearing.hpp"

#include <algorithm>

#include "frobound/connection/residue.hpp"

namespace frobound {

namespace {

RationalMatrix matrix_power(const RationalMatrix& a, std::size_t e) {
  RationalMatrix r = rational_identity(a.rows());
  for (std::size_t i = 0; i < e; ++i) r = r * a;
  return r;
}

// Columns: a basis of the generalized eigenspace of lambda, then a basis of
// the sum of the other generalized eigenspaces.
RationalMatrix splitting_basis(const RationalMatrix& res, const std::vector<Rational>& ev,
                               const Rational& lambda, std::size_t& block) {
  const std::size_t r = res.rows();
  auto shifted = [&](const Rational& mu) { return res - RationalMatrix::identity(r, 0, mu); };
  auto first = kernel(matrix_power(shifted(lambda), r));
  RationalMatrix others = rational_identity(r);
  for (const auto& mu : ev)
    if (mu != lambda) others = others * shifted(mu);
  auto second = kernel(matrix_power(others, r));
  block = first.size();
  RationalMatrix p(r, r, Rational(0));
  std::size_t col = 0;
  for (const auto* basis : {&first, &second})
    for (const auto& v : *basis) {
      for (std::size_t i = 0; i < r; ++i) p(i, col) = v[i];
      ++col;
    }
  if (col != r) throw ArithmeticError("shearing: generalized eigenspaces do not span");
  return p;
}

}  // namespace

RatFuncMatrix gauge_transform(const RatFuncMatrix& n, const RatFuncMatrix& w) {
  RatFuncMatrix winv = inverse(w);
  return winv * n * w + winv * derivative(w);
}

ShearingResult shearing_transform(const Connection& conn, const Point& z) {
  if (z.is_infinity()) throw UnsupportedInput("shearing_transform: z must be finite");
  const std::size_t r = conn.rank();
  ShearingResult out{ratfunc_identity(r), conn.matrix(), 0};
  for (const auto& lambda : exponents(conn, z))
    if (lambda.get_den() != 1)
      throw UnsupportedInput("shearing_transform: exponent " + to_string(lambda) + " is not an integer");
  const RatFunc lin(QPoly::linear(z.value()));
  const RatFunc lin_inv = RatFunc(1L) / lin;
  for (;;) {
    Connection cur(conn.prime(), out.n_new, conn.family());
    RationalMatrix res = residue_matrix(cur, z);
    auto ev = eigenvalues(res);
    // lower the largest positive exponent, else raise the smallest negative
    Rational target;
    RatFunc factor;
    if (ev.back() > 0) {
      target = ev.back();
      factor = lin_inv;
    } else if (ev.front() < 0) {
      target = ev.front();
      factor = lin;
    } else {
      break;
    }
    std::size_t block = 0;
    RationalMatrix p = splitting_basis(res, ev, target, block);
    RatFuncMatrix d = ratfunc_identity(r);
    for (std::size_t i = 0; i < block; ++i) d(i, i) = factor;
    RatFuncMatrix step = to_ratfunc(p) * d;
    out.n_new = gauge_transform(out.n_new, step);
    out.w = out.w * step;
    ++out.steps;
    if (out.steps > 10000) throw ArithmeticError("shearing_transform: no convergence");
  }
  return out;
}

}  // namespace frobound
