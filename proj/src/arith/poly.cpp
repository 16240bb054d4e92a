// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/arith/poly.hpp"

#include <algorithm>
#include <sstream>

#include "frobound/errors.hpp"

namespace frobound {

QPoly::QPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

QPoly::QPoly(const Rational& constant) {
  if (constant != 0) c_.push_back(constant);
}

QPoly QPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return QPoly(std::move(v));
}

QPoly QPoly::t() { return monomial(1, 1); }

QPoly QPoly::linear(const Rational& z) { return QPoly(std::vector<Rational>{-z, 1}); }

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& QPoly::leading() const {
  if (c_.empty()) throw ArithmeticError("leading coefficient of the zero polynomial");
  return c_.back();
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return QPoly(std::move(r));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(r));
}

QPoly QPoly::scaled(const Rational& s) const {
  if (s == 0) return {};
  QPoly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return QPoly(std::move(r));
}

Rational QPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

QPoly QPoly::compose(const QPoly& inner) const {
  QPoly acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + QPoly(c_[i]);
  return acc;
}

QPoly QPoly::pow(unsigned e) const {
  QPoly result(1);
  QPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading());
}

QPoly QPoly::reversed(std::size_t as_degree) const {
  if (degree() > static_cast<long>(as_degree))
    throw ArithmeticError("reversed: target degree below actual degree");
  std::vector<Rational> r(as_degree + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) r[as_degree - i] = c_[i];
  return QPoly(std::move(r));
}

int QPoly::root_multiplicity(const Rational& z) const {
  if (is_zero()) throw ArithmeticError("root_multiplicity of the zero polynomial");
  int m = 0;
  QPoly f = *this;
  QPoly lin = linear(z);
  while (f.degree() >= 1 && f.evaluate(z) == 0) {
    f = divmod(f, lin).first;
    ++m;
  }
  return m;
}

Valuation QPoly::gauss_valuation(long p) const {
  Valuation v = Valuation::infinite();
  for (const auto& x : c_) v = min(v, val_p(x, p));
  return v;
}

std::string QPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (i == 0 || !unit) os << mag.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  long db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db) + 1);
  Rational inv_lead = 1 / b.leading();
  const auto& bc = b.coefficients();
  for (long k = a.degree() - db; k >= 0; --k) {
    Rational q = rem[static_cast<std::size_t>(k + db)] * inv_lead;
    quo[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (long j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

QPoly lcm(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) throw ArithmeticError("lcm of the zero polynomial");
  return divmod(a * b, gcd(a, b)).first.monic();
}

std::pair<QPoly, QPoly> bezout(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b;
  QPoly s0(1), s1, u0, u1(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - q * s1;
    QPoly u2 = u0 - q * u1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) return {QPoly(), QPoly()};
  Rational inv = 1 / r0.leading();
  return {s0.scaled(inv), u0.scaled(inv)};
}

namespace {

std::vector<Integer> positive_divisors(const Integer& n) {
  static const Integer kLimit("1000000000000");
  Integer m = abs(n);
  if (m > kLimit) throw UnsupportedInput("rational root search: coefficient too large to factor");
  std::vector<std::pair<Integer, int>> factors;
  for (Integer d = 2; d * d <= m; ++d) {
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(d, e);
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::vector<Integer> divisors{1};
  for (const auto& [prime, e] : factors) {
    std::size_t count = divisors.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= prime;
      for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

/// Integer polynomial with the same roots (primitive, content removed).
std::vector<Integer> integer_multiple(const QPoly& f) {
  Integer den = 1;
  for (const auto& c : f.coefficients()) {
    Integer d = c.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : f.coefficients()) {
    Integer v = c.get_num() * (den / c.get_den());
    out.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g != 0)
    for (auto& v : out) v /= g;
  return out;
}

}  // namespace

RationalRoots rational_roots(const QPoly& f) {
  if (f.is_zero()) throw ArithmeticError("rational_roots of the zero polynomial");
  RationalRoots out;
  QPoly rest = f.monic();
  int zero_mult = 0;
  while (rest.degree() >= 1 && rest[0] == 0) {
    rest = divmod(rest, QPoly::t()).first;
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.emplace_back(Rational(0), zero_mult);
  if (rest.degree() >= 1) {
    auto ints = integer_multiple(rest);
    auto num_divs = positive_divisors(ints.front());
    auto den_divs = positive_divisors(ints.back());
    std::vector<Rational> candidates;
    for (const auto& a : num_divs)
      for (const auto& b : den_divs) {
        Rational q(a, b);
        q.canonicalize();
        candidates.push_back(q);
        candidates.push_back(-q);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& z : candidates) {
      if (rest.degree() < 1) break;
      int m = 0;
      while (rest.degree() >= 1 && rest.evaluate(z) == 0) {
        rest = divmod(rest, QPoly::linear(z)).first;
        ++m;
      }
      if (m > 0) out.roots.emplace_back(z, m);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.cofactor = rest.monic();
  return out;
}

}  // namespace frobound
