// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace frobound {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Violated precondition of an exact or modular operation (non-unit inverse,
/// ring mismatch, singular matrix, ...).
struct ArithmeticError : Error {
  using Error::Error;
};

/// Input outside the supported class (irrational singular points or
/// exponents, non-integer exponents for shearing, p = 2, ...).
struct UnsupportedInput : Error {
  using Error::Error;
};

/// Accuracy floor exhausted; `required` carries the suggested parameter value
/// (working precision or truncation length) when known, else 0.
struct PrecisionError : Error {
  PrecisionError(const std::string& what, long required_value = 0)
      : Error(what), required(required_value) {}
  long required;
};

/// A computed quantity contradicts a proven bound.
struct TheoremViolation : Error {
  using Error::Error;
};

}  // namespace frobound
