// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/connection/residue.hpp"

#include <algorithm>

namespace frobound {

long pole_order(const Connection& conn, const Point& z) {
  if (z.is_infinity()) {
    Valuation o = order_at_infinity(conn.matrix());
    return o.is_infinite() ? 0 : std::max(0L, 2 - o.value());
  }
  Valuation o = order_at(conn.matrix(), z.value());
  return o.is_infinite() ? 0 : std::max(0L, -o.value());
}

RationalMatrix residue_matrix(const Connection& conn, const Point& z) {
  long order = pole_order(conn, z);
  if (order >= 2)
    throw UnsupportedInput("pole of order " + std::to_string(order) + " at " + z.str() +
                           " (only simple poles are supported)");
  const auto& n = conn.matrix();
  if (z.is_infinity()) {
    // -lim_{t->inf} t N(t)
    return n.map([](const RatFunc& f) -> Rational {
      if (f.is_zero() || f.order_at_infinity().value() > 1) return Rational(0);
      return -(f.numerator().leading() / f.denominator().leading());
    });
  }
  RatFunc lin(QPoly::linear(z.value()));
  return n.map([&](const RatFunc& f) { return (f * lin).evaluate(z.value()); });
}

std::vector<Rational> eigenvalues(const RationalMatrix& a) {
  QPoly chi = characteristic_polynomial(a);
  RationalRoots rr = rational_roots(chi);
  if (rr.cofactor.degree() > 0) {
    std::string why = "characteristic polynomial " + chi.str("T") + " does not split over Q";
    if (rr.cofactor.degree() == 2) {
      Rational b = rr.cofactor[1], c = rr.cofactor[0], lc = rr.cofactor[2];
      why += " (quadratic factor with discriminant " + to_string(b * b - 4 * lc * c) + ")";
    }
    throw UnsupportedInput("irrational exponents: " + why);
  }
  std::vector<Rational> ev;
  for (const auto& [x, mult] : rr.roots)
    for (int k = 0; k < mult; ++k) ev.push_back(x);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<Rational> exponents(const Connection& conn, const Point& z) {
  return eigenvalues(residue_matrix(conn, z));
}

ResidueData residue_data(const Connection& conn, const Point& z) {
  ResidueData d{z, residue_matrix(conn, z), {}, std::nullopt};
  d.exponents = eigenvalues(d.residue);
  const std::size_t r = d.residue.rows();
  RationalMatrix s(r, r, Rational(0));
  std::size_t col = 0;
  for (std::size_t k = 0; k < d.exponents.size();) {
    const Rational lambda = d.exponents[k];
    std::size_t mult = 0;
    while (k + mult < d.exponents.size() && d.exponents[k + mult] == lambda) ++mult;
    RationalMatrix shifted = d.residue - RationalMatrix::identity(r, 0, lambda);
    auto basis = kernel(shifted);
    if (basis.size() != mult) return d;  // not diagonalizable
    for (const auto& v : basis) {
      for (std::size_t i = 0; i < r; ++i) s(i, col) = v[i];
      ++col;
    }
    k += mult;
  }
  d.diagonalizer = s;
  return d;
}

long diagonalizer_valuation_sum(const RationalMatrix& s, long p) {
  return valuation(s, p).value() + valuation(inverse(s), p).value();
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) { return c.passed; });
}

ValidationReport validate_theorem_hypotheses(const Connection& conn, const Point& z) {
  const long p = conn.prime();
  ValidationReport rep{z, false, {}};
  long order = pole_order(conn, z);
  if (order == 0) {
    rep.no_pole = true;
    for (const char* name : {"simple-pole", "exponents-p-integral", "distinct-residue-discs", "z-p-integral"})
      rep.checks.push_back({name, true, "vacuous: no pole at " + z.str()});
    return rep;
  }
  rep.checks.push_back({"simple-pole", order == 1, "pole order " + std::to_string(order)});
  if (order == 1) {
    try {
      auto ex = exponents(conn, z);
      bool ok = true;
      std::string detail = "exponents {";
      for (std::size_t i = 0; i < ex.size(); ++i) {
        detail += (i ? ", " : "") + to_string(ex[i]);
        Integer d = ex[i].get_den();
        if (d % p == 0) ok = false;
      }
      detail += "}";
      if (!ok) detail += " not " + std::to_string(p) + "-integral";
      rep.checks.push_back({"exponents-p-integral", ok, detail});
    } catch (const UnsupportedInput& e) {
      rep.checks.push_back({"exponents-p-integral", false, e.what()});
    }
  } else {
    rep.checks.push_back({"exponents-p-integral", false, "residue undefined for a higher-order pole"});
  }
  bool discs_ok = true;
  std::string disc_detail;
  for (const auto& w : conn.singular_points()) {
    if (w == z) continue;
    bool clash = false;
    std::string how;
    if (z.is_infinity() || w.is_infinity()) {
      // infinity shares its disc with every point of negative valuation
      const Rational& finite = z.is_infinity() ? w.value() : z.value();
      clash = finite != 0 && val_p(finite, p).value() < 0;
      how = "v_p(" + to_string(finite) + ") < 0";
    } else {
      Rational diff = z.value() - w.value();
      long v = val_p(diff, p).value();
      clash = v > 0;
      how = "v_p(" + z.str() + " - " + w.str() + ") = " + std::to_string(v);
    }
    if (clash) {
      discs_ok = false;
      disc_detail += (disc_detail.empty() ? "" : "; ") + how;
    }
  }
  rep.checks.push_back({"distinct-residue-discs", discs_ok,
                        discs_ok ? "no other singular point reduces to " + z.str() : disc_detail});
  bool integral = z.is_infinity() || z.value() == 0 || val_p(z.value(), p).value() >= 0;
  rep.checks.push_back({"z-p-integral", integral,
                        integral ? "ok" : z.str() + " is not " + std::to_string(p) + "-integral"});
  return rep;
}

}  // namespace frobound
