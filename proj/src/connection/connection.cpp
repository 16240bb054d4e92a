// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/connection/connection.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace frobound {

const Rational& Point::value() const {
  if (inf_) throw ArithmeticError("Point::value: the point at infinity has no finite coordinate");
  return z_;
}

std::string Point::str() const { return inf_ ? "inf" : to_string(z_); }

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
  int c = cmp(a.z_, b.z_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Point parse_point(std::string_view text) {
  std::string s(text);
  if (s == "inf" || s == "infinity" || s == "oo") return Point::infinity();
  return Point::at(parse_rational(s));
}

Connection::Connection(long p, RatFuncMatrix N, std::string family)
    : p_(p), n_(std::move(N)), family_(std::move(family)) {
  if (!n_.is_square() || n_.rows() == 0) throw UnsupportedInput("connection matrix must be square and nonempty");
  QPoly den = common_denominator(n_);
  if (den.degree() > 0) {
    RationalRoots rr = rational_roots(den);
    if (rr.cofactor.degree() > 0)
      throw UnsupportedInput("connection has singular points that are not rational: factor " +
                             rr.cofactor.str() + " of the denominator");
    for (const auto& [z, mult] : rr.roots) singular_.push_back(Point::at(z));
  }
  // N dt at infinity: -N(1/s) ds / s^2 has a pole iff some entry has
  // ord_inf <= 1
  Valuation ord_inf = order_at_infinity(n_);
  if (!ord_inf.is_infinite() && ord_inf.value() <= 1) singular_.push_back(Point::infinity());
  std::sort(singular_.begin(), singular_.end());
}

bool Connection::is_singular(const Point& z) const {
  return std::find(singular_.begin(), singular_.end(), z) != singular_.end();
}

RatFuncMatrix elliptic_example_matrix() {
  QPoly t = QPoly::t();
  RatFunc scale(QPoly(1), t * t - QPoly(4));
  Rational h(1, 2);
  RatFuncMatrix n(2, 2, RatFunc(0L));
  n(0, 0) = RatFunc(t.scaled(-h) - QPoly(h)) * scale;
  n(0, 1) = RatFunc(t.scaled(h) + QPoly(Rational(3, 2))) * scale;
  n(1, 0) = RatFunc(QPoly(-h)) * scale;
  n(1, 1) = RatFunc(t.scaled(h) + QPoly(h)) * scale;
  return n;
}

Connection elliptic_example(long p) {
  return Connection(p, elliptic_example_matrix(), std::string(kEllipticFamily));
}

Connection parse_connection(std::string_view text, std::string family) {
  std::vector<std::string> items;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string item;
    std::istringstream ls(line);
    while (std::getline(ls, item, ';')) {
      auto b = item.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto e = item.find_last_not_of(" \t\r");
      items.push_back(item.substr(b, e - b + 1));
    }
  }
  // r and p may share a line
  std::vector<std::string> head;
  std::size_t pos = 0;
  while (head.size() < 2 && pos < items.size()) {
    std::istringstream hs(items[pos++]);
    std::string tok;
    while (hs >> tok) head.push_back(tok);
  }
  if (head.size() != 2) throw UnsupportedInput("connection file: expected 'r p' header");
  long r = 0, p = 0;
  try {
    r = std::stol(head[0]);
    p = std::stol(head[1]);
  } catch (const std::exception&) {
    throw UnsupportedInput("connection file: r and p must be integers");
  }
  if (r < 1 || r > 16) throw UnsupportedInput("connection file: rank must be in [1, 16]");
  auto rr = static_cast<std::size_t>(r);
  if (items.size() - pos != rr * rr)
    throw UnsupportedInput("connection file: expected " + std::to_string(rr * rr) + " entries, found " +
                           std::to_string(items.size() - pos));
  RatFuncMatrix n(rr, rr, RatFunc(0L));
  for (std::size_t k = 0; k < rr * rr; ++k) n(k / rr, k % rr) = parse_ratfunc(items[pos + k]);
  return Connection(p, std::move(n), std::move(family));
}

Connection connection_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UnsupportedInput("cannot open connection file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_connection(ss.str(), "file:" + path);
}

Connection load_family(const std::string& family, long p) {
  if (family == kEllipticFamily) return elliptic_example(p);
  Connection c = connection_from_file(family);
  return p > 0 ? c.with_prime(p) : c;
}

}  // namespace frobound
