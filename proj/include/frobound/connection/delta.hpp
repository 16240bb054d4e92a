// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mutex>
#include <vector>

#include "frobound/connection/connection.hpp"

namespace frobound {

/// Matrices of the divided powers D^i / i! of the connection, with
/// Delta^(0) = I and Delta^(i+1) = (d/dt Delta^(i) + N Delta^(i)) / (i+1).
///
/// Stored as P_i / den^i with den the monic common denominator of N, so
/// P_{i+1} = (den P_i' - i den' P_i + (den N) P_i) / (i+1). Memoized and
/// safe to share between threads.
class DeltaSequence {
 public:
  explicit DeltaSequence(const Connection& conn);

  const QPoly& denominator() const { return den_; }
  /// P_i; extends the memo table as needed.
  PolyMatrix numerator(std::size_t i);
  /// P_i / den^i in reduced form.
  RatFuncMatrix delta(std::size_t i);
  std::size_t computed() const;

 private:
  QPoly den_;
  QPoly den_prime_;
  PolyMatrix n_tilde_;
  mutable std::mutex mu_;
  std::vector<PolyMatrix> p_;
};

std::vector<RatFuncMatrix> delta_matrices(const Connection& conn, std::size_t i_max);

/// Probe of v_p under the sup norm on V: minimum coefficient valuation of the
/// expansions at 0 and at infinity (in s = 1/t), truncated at k_probe. A disc
/// containing a point of `excluded` is not part of V and is skipped; a pole
/// of f inside a probed disc is an error. Coefficients are computed modulo
/// p^3 after removing contents, so the result is exact once k_probe exceeds
/// the numerator degree (see default_probe_length). Returns an infinite valuation for
/// f = 0.
Valuation v_on_V(const RatFuncMatrix& f, long p, std::size_t k_probe,
                 const std::vector<Point>& excluded = {});
Valuation v_on_V(const RatFunc& f, long p, std::size_t k_probe,
                 const std::vector<Point>& excluded = {});
/// Same probe on an unreduced quotient (the denominator must not vanish in a
/// probed disc even where it cancels).
Valuation v_on_V(const QPoly& numerator, const QPoly& denominator, long p, std::size_t k_probe,
                 const std::vector<Point>& excluded = {});

/// Probe length that covers the polynomial part of f with margin.
std::size_t default_probe_length(const RatFuncMatrix& f);

}  // namespace frobound
