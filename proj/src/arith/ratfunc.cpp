// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/arith/ratfunc.hpp"

#include <cctype>

#include "frobound/errors.hpp"

namespace frobound {

RatFunc::RatFunc(QPoly numerator) : num_(std::move(numerator)), den_(1) {}

RatFunc::RatFunc(QPoly numerator, QPoly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw ArithmeticError("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = QPoly(1);
    return;
  }
  if (den_.degree() > 0) {
    QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    num_ = num_.scaled(1 / lead);
    den_ = den_.scaled(1 / lead);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw ArithmeticError("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rational RatFunc::evaluate(const Rational& z) const {
  Rational d = den_.evaluate(z);
  if (d == 0) throw ArithmeticError("evaluate: pole at " + z.get_str());
  return num_.evaluate(z) / d;
}

Valuation RatFunc::order_at(const Rational& z) const {
  if (is_zero()) return Valuation::infinite();
  return Valuation::exact(num_.root_multiplicity(z) - den_.root_multiplicity(z));
}

Valuation RatFunc::order_at_infinity() const {
  if (is_zero()) return Valuation::infinite();
  return Valuation::exact(den_.degree() - num_.degree());
}

RatFunc RatFunc::compose(const QPoly& inner) const {
  return RatFunc(num_.compose(inner), den_.compose(inner));
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return RatFunc(1) / pow(-e);
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

Valuation RatFunc::gauss_valuation(long p) const {
  if (is_zero()) return Valuation::infinite();
  return Valuation::exact(num_.gauss_valuation(p).value() - den_.gauss_valuation(p).value());
}

std::string RatFunc::str() const {
  if (den_.degree() == 0) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc parse() {
    RatFunc r = expression();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw UnsupportedInput("cannot parse '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RatFunc expression() {
    RatFunc acc;
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }
  RatFunc term() {
    RatFunc acc = power();
    for (;;) {
      if (eat('*')) acc = acc * power();
      else if (eat('/')) acc = acc / power();
      else if (implicit_factor()) acc = acc * power();  // 2t, 3(t+1)
      else return acc;
    }
  }
  bool implicit_factor() {
    skip();
    return pos_ < s_.size() && (s_[pos_] == 't' || s_[pos_] == '(');
  }
  RatFunc power() {
    RatFunc base = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      long e = number_literal();
      base = base.pow(static_cast<int>(neg ? -e : e));
    }
    return base;
  }
  long number_literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }
  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc inner = expression();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (c == 't') {
      ++pos_;
      return RatFunc(QPoly::t());
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text) { return Parser(text).parse(); }

}  // namespace frobound
