// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/reconstruct/reconstruct.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace frobound {

namespace {

Integer unit_point(const RingPtr& ring, const Rational& z) {
  if (z == 0 || val_p(z, ring->prime()).value() != 0)
    throw UnsupportedInput("pole-order measurement needs a p-adic unit point, got " + to_string(z));
  return ring->reduce(z);
}

bool window_is_zero(const TruncSeries& h, long from, long to) {
  for (long k = from; k <= to; ++k)
    if (h.mantissa(static_cast<std::size_t>(k)) != 0) return false;
  return true;
}

std::string valuation_text(const Valuation& v) {
  if (v.is_infinite()) return "inf";
  return v.is_lower_bound() ? ">=" + std::to_string(v.value()) : std::to_string(v.value());
}

}  // namespace

long default_degree_cap(long guess_at_z, const std::vector<ClearedPoint>& others) {
  long sum = std::max(0L, guess_at_z);
  for (const auto& o : others) sum += o.power;
  return 2 * sum + 32;
}

OrderMeasurement measure_series_order(const SeriesMatrix& phi, const Rational& z,
                                      const std::vector<ClearedPoint>& others, int window,
                                      long degree_cap) {
  const RingPtr& ring = phi(0, 0).ring();
  const long K = static_cast<long>(length(phi));
  if (window < 1) throw UnsupportedInput("window must be positive");
  if (K <= degree_cap + window)
    throw PrecisionError("increase K: the window test needs K > D_max + W = " +
                             std::to_string(degree_cap + window),
                         degree_cap + window + 1);
  const Integer zz = unit_point(ring, z);
  std::vector<Integer> zo;
  for (const auto& o : others) zo.push_back(ring->reduce(o.z));
  OrderMeasurement out{Valuation::infinite(), degree_cap, window};
  for (const auto& f : phi.entries()) {
    if (f.is_zero()) continue;
    TruncSeries h = f;
    for (std::size_t k = 0; k < others.size(); ++k)
      for (long b = 0; b < others[k].power; ++b) h = h.times_linear(zo[k]);
    for (int i = 0; i < window; ++i) h = h.divided_by_linear(zz);
    std::optional<long> found;
    for (long o = window; o >= -degree_cap; --o) {
      if (window_is_zero(h, degree_cap + 1, degree_cap + window)) {
        found = o;
        break;
      }
      h = h.times_linear(zz);
    }
    if (!found)
      throw PrecisionError("increase K: window test inconclusive at z = " + to_string(z) +
                               " (no order in [" + std::to_string(-degree_cap) + ", " +
                               std::to_string(window) + "] passes)",
                           K + 1);
    Valuation v = *found == window ? Valuation::at_least(window) : Valuation::exact(*found);
    out.order = min(out.order, v);
  }
  return out;
}

OrderMeasurement measured_order_at(const FrobeniusData& data, const Rational& z, int m,
                                   const std::vector<ClearedPoint>& others, int window,
                                   long degree_cap) {
  return measure_series_order(data.phi_mod(m), z, others, window, degree_cap);
}

QPoly ModRatFuncMatrix::denominator() const {
  QPoly d(1);
  for (const auto& pl : poles) d *= QPoly::linear(pl.z).pow(static_cast<unsigned>(pl.power));
  return d;
}

long ModRatFuncMatrix::numerator_degree() const {
  long d = -1;
  for (const auto& e : numerators.entries()) d = std::max(d, static_cast<long>(e.size()) - 1);
  return d;
}

SeriesMatrix ModRatFuncMatrix::expand(std::size_t len) const {
  return numerators.map([&](const std::vector<Integer>& c) {
    std::vector<Integer> m(len);
    for (std::size_t k = 0; k < c.size() && k < len; ++k) m[k] = c[k];
    TruncSeries s(ring, std::move(m), ring->precision());
    for (const auto& pl : poles)
      for (long b = 0; b < pl.power; ++b) s = s.divided_by_linear(ring->reduce(pl.z));
    return s;
  });
}

ModRatFuncMatrix rational_reconstruction(const SeriesMatrix& phi, const std::vector<ClearedPoint>& poles,
                                         int window) {
  const RingPtr& ring = phi(0, 0).ring();
  const std::size_t K = length(phi);
  if (static_cast<long>(K) <= window) throw PrecisionError("rational_reconstruction: K <= W", window + 1);
  const std::size_t limit = K - static_cast<std::size_t>(window);
  ModRatFuncMatrix out{ring, poles, Matrix<std::vector<Integer>>()};
  out.numerators = phi.map([&](const TruncSeries& f) {
    TruncSeries h = f;
    for (const auto& pl : poles)
      for (long b = 0; b < pl.power; ++b) h = h.times_linear(ring->reduce(pl.z));
    std::vector<Integer> c(h.mantissas().begin(), h.mantissas().begin() + static_cast<long>(limit));
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
  });
  if (out.numerator_degree() + static_cast<long>(window) >= static_cast<long>(limit))
    throw ArithmeticError("rational_reconstruction: numerator does not terminate; orders are inconsistent");
  SeriesMatrix back = truncated(out.expand(K), limit);
  if (!(back == truncated(reduce_to(phi, ring), limit)))
    throw ArithmeticError("rational_reconstruction: re-expansion mismatch");
  return out;
}

std::string ExperimentTable::csv() const {
  std::ostringstream os;
  os << "p,z,m,measured_order,bound,variant,sharp\n";
  for (const auto& r : rows)
    os << r.p << ',' << to_string(r.z) << ',' << r.m << ',' << valuation_text(r.measured) << ',' << r.bound
       << ',' << r.variant << ',' << (r.sharp ? "true" : "false") << '\n';
  return os.str();
}

std::string ExperimentTable::json() const {
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["z"] = to_string(r.z);
    j["m"] = r.m;
    if (r.measured.is_lower_bound())
      j["measured_order"] = valuation_text(r.measured);
    else
      j["measured_order"] = r.measured.value();
    j["bound"] = r.bound;
    j["variant"] = r.variant;
    j["sharp"] = r.sharp;
    rows_json.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["p"] = p;
  doc["M"] = M;
  doc["K"] = K;
  doc["rows"] = std::move(rows_json);
  return doc.dump(2) + "\n";
}

std::string ExperimentTable::table() const {
  std::ostringstream os;
  os << std::setw(4) << "p" << std::setw(6) << "z" << std::setw(5) << "m" << std::setw(10) << "measured"
     << std::setw(8) << "bound" << "  " << std::left << std::setw(22) << "variant" << std::right << "sharp\n";
  for (const auto& r : rows)
    os << std::setw(4) << r.p << std::setw(6) << to_string(r.z) << std::setw(5) << r.m << std::setw(10)
       << valuation_text(r.measured) << std::setw(8) << r.bound << "  " << std::left << std::setw(22)
       << r.variant << std::right << (r.sharp ? "yes" : "") << '\n';
  return os.str();
}

std::vector<ExperimentRow> ExperimentTable::violations() const {
  std::vector<ExperimentRow> v;
  for (const auto& r : rows)
    if (r.measured.value() < r.bound) v.push_back(r);
  return v;
}

BoundProfile experiment_profile(const Connection& conn, const FrobeniusData& data, const Point& z,
                                const ExperimentOptions& opt) {
  long vphi = opt.vphi ? *opt.vphi : valuation(data.phi0).value();
  long vphi_inv = opt.vphi_inv ? *opt.vphi_inv : inverse_valuation(data.phi0).value();
  return make_profile(conn, z, vphi, vphi_inv, opt.convention);
}

ExperimentTable experiment_table(const Connection& conn, const FrobeniusData& data,
                                 const ExperimentOptions& opt) {
  if (opt.m_min < 1 || opt.m_max < opt.m_min) throw UnsupportedInput("experiment: invalid m range");
  if (opt.m_max > data.acc)
    throw PrecisionError("experiment: m_max = " + std::to_string(opt.m_max) + " exceeds the accuracy " +
                             std::to_string(data.acc) + " of Phi; increase M",
                         opt.m_max);
  ExperimentTable table{data.p, data.M, data.K, {}};
  std::vector<Point> finite;
  for (const auto& s : conn.singular_points())
    if (!s.is_infinity()) finite.push_back(s);
  std::vector<BoundProfile> profiles;
  for (const auto& s : finite) profiles.push_back(experiment_profile(conn, data, s, opt));

  struct Job {
    Rational z;
    long m;
  };
  std::vector<Job> jobs;
  for (const auto& z : opt.points)
    for (long m = opt.m_min; m <= opt.m_max; ++m) jobs.push_back({z, m});
  std::vector<std::optional<ExperimentRow>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  auto run = [&](std::size_t k) {
    const Job& job = jobs[k];
    const Point zp = Point::at(job.z);
    BoundProfile prof = experiment_profile(conn, data, zp, opt);
    BoundRow row = order_bound(job.m, prof);
    std::vector<ClearedPoint> others;
    for (std::size_t i = 0; i < finite.size(); ++i) {
      if (finite[i] == zp) continue;
      BoundRow other = order_bound(job.m, profiles[i]);
      others.push_back({finite[i].value(), std::max(0L, -other.bound) + opt.slack});
    }
    long cap = opt.degree_cap > 0 ? opt.degree_cap : default_degree_cap(-row.bound, others);
    OrderMeasurement meas = measured_order_at(data, job.z, static_cast<int>(job.m), others, opt.window, cap);
    ExperimentRow r;
    r.p = data.p;
    r.z = job.z;
    r.m = job.m;
    r.measured = meas.order;
    r.bound = row.bound;
    r.variant = row.variant();
    if (row.remark2_condition && !row.remark2_applied) r.variant += "(remark2-condition)";
    if (prof.vS_sum && !row.remark2_condition) r.variant += "(remark2-condition-fails)";
    r.sharp = !meas.order.is_lower_bound() && meas.order.value() == row.bound;
    r.remark2_condition = row.remark2_condition;
    results[k] = r;
  };
  const unsigned nt = std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < jobs.size(); k += nt) {
        try {
          run(k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    table.rows.push_back(*results[k]);
  }
  return table;
}

}  // namespace frobound
