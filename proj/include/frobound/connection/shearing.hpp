// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frobound/connection/connection.hpp"

namespace frobound {

/// The connection matrix after the basis change W:
/// W^{-1} N W + W^{-1} dW/dt.
RatFuncMatrix gauge_transform(const RatFuncMatrix& n, const RatFuncMatrix& w);

struct ShearingResult {
  RatFuncMatrix w;
  RatFuncMatrix n_new;
  /// Number of elementary (t - z)^{+-1} steps.
  int steps = 0;
};

/// Basis change moving every exponent at the finite point z to 0. Requires
/// integer exponents; throws UnsupportedInput otherwise.
ShearingResult shearing_transform(const Connection& conn, const Point& z);

}  // namespace frobound
