// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/cli/cli.hpp"

#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "frobound/connection/delta.hpp"
#include "frobound/connection/residue.hpp"
#include "frobound/frobenius/cache.hpp"
#include "frobound/frobenius/fiber.hpp"
#include "frobound/frobenius/lift.hpp"
#include "frobound/reconstruct/reconstruct.hpp"

namespace frobound::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr long kKnownVPhi = 0;
constexpr long kKnownVPhiInv = -1;

Connection load(const JobConfig& cfg) { return load_family(cfg.family, cfg.p); }

std::string join(const std::vector<Rational>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
  return s;
}

json rationals_json(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

json matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string val_str(long v) { return v >= Valuation::kInfinity ? "inf" : std::to_string(v); }

// Points requested with --z, else the finite singular points.
std::vector<Point> target_points(const JobConfig& cfg, const Connection& conn) {
  if (cfg.z) return {parse_point(*cfg.z)};
  std::vector<Point> pts;
  for (const auto& s : conn.singular_points())
    if (!s.is_infinity()) pts.push_back(s);
  return pts;
}

int report_hypotheses(const std::vector<ValidationReport>& reports, std::ostream& err) {
  bool ok = true;
  for (const auto& r : reports)
    for (const auto& c : r.checks)
      if (!c.passed) {
        ok = false;
        err << "hypothesis failure at z=" << r.z.str() << ": " << c.name << " (" << c.detail << ")\n";
      }
  return ok ? kOk : kUnsupported;
}

std::filesystem::path cache_dir(const JobConfig& cfg) { return cache_directory(cfg.cache_dir); }

}  // namespace

void JobConfig::validate() const {
  if (p < 3 || !is_prime(p)) throw UnsupportedInput("p must be an odd prime, got " + std::to_string(p));
  if (M < 1) throw UnsupportedInput("M must be >= 1");
  if (K < 64) throw UnsupportedInput("K must be >= 64");
  if (buffer < 0) throw UnsupportedInput("buffer must be >= 0");
  if (window < 1) throw UnsupportedInput("window must be >= 1");
  if (m_min < 1 || effective_m_max() < m_min || effective_m_max() > M)
    throw UnsupportedInput("m range must lie in [1, M]");
}

int cmd_exponents(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  Connection conn = load(cfg);
  std::vector<ValidationReport> reports;
  json points = json::array();
  std::ostringstream table;
  if (conn.singular_points().empty()) table << "no singular points\n";
  for (const auto& z : conn.singular_points()) {
    ResidueData rd = residue_data(conn, z);
    ValidationReport rep = validate_theorem_hypotheses(conn, z);
    reports.push_back(rep);
    json checks = json::array();
    table << "z=" << z.str() << "  pole order " << pole_order(conn, z) << "\n"
          << "  residue   " << str(rd.residue) << "\n"
          << "  exponents {" << join(rd.exponents) << "}\n";
    for (const auto& c : rep.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      table << "  " << c.name << ": " << (c.passed ? "pass" : "FAIL") << (c.detail.empty() ? "" : " (" + c.detail + ")")
            << "\n";
    }
    points.push_back({{"z", z.str()},
                      {"pole_order", pole_order(conn, z)},
                      {"residue", matrix_json(rd.residue)},
                      {"exponents", rationals_json(rd.exponents)},
                      {"checks", checks}});
  }
  if (cfg.format == Format::Json) {
    out << json{{"family", conn.family()}, {"p", conn.prime()}, {"singular_points", points}}.dump(2) << "\n";
  } else {
    out << "family " << conn.family() << ", p = " << conn.prime() << "\n" << table.str();
  }
  return report_hypotheses(reports, err);
}

int cmd_bounds(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  Connection conn = load(cfg);
  const long vphi = cfg.vphi.value_or(kKnownVPhi);
  const long vphi_inv = cfg.vphi_inv.value_or(kKnownVPhiInv);
  std::vector<ValidationReport> reports;
  json rows = json::array();
  std::ostringstream csv, table;
  csv << "p,z,m,alpha1,alpha2,g,bound,variant\n";
  table << "p    z      m  alpha1  alpha2  g      bound  variant\n";
  for (const auto& z : target_points(cfg, conn)) {
    reports.push_back(validate_theorem_hypotheses(conn, z));
    if (!reports.back().all_passed()) continue;
    BoundProfile prof = make_profile(conn, z, vphi, vphi_inv, cfg.convention);
    for (const auto& r : bound_table(prof, cfg.m_min, cfg.effective_m_max())) {
      rows.push_back({{"p", conn.prime()},
                      {"z", z.str()},
                      {"m", r.m},
                      {"alpha1", r.alpha1},
                      {"alpha2", r.alpha2},
                      {"g", r.g},
                      {"bound", r.bound},
                      {"variant", r.variant()}});
      csv << conn.prime() << "," << z.str() << "," << r.m << "," << r.alpha1 << "," << r.alpha2 << "," << r.g << ","
          << r.bound << "," << r.variant() << "\n";
      char line[160];
      std::snprintf(line, sizeof line, "%-4ld %-6s %-2ld %-7ld %-7ld %-6ld %-6ld %s\n", conn.prime(),
                    z.str().c_str(), r.m, r.alpha1, r.alpha2, r.g, r.bound, r.variant().c_str());
      table << line;
    }
  }
  if (cfg.format == Format::Json)
    out << json{{"p", conn.prime()}, {"vphi", vphi}, {"vphi_inv", vphi_inv}, {"rows", rows}}.dump(2) << "\n";
  else
    out << (cfg.format == Format::Csv ? csv.str() : table.str());
  return report_hypotheses(reports, err);
}

int cmd_deform(const JobConfig& cfg, std::ostream& out, std::ostream&) {
  Connection conn = load(cfg);
  CachedFrobenius c = load_or_compute_frobenius(conn, cfg.M, cfg.K, cfg.buffer, cache_dir(cfg));
  Valuation res = frobeq_residual(conn, c.data);
  const bool ok = res.value() >= c.data.acc;
  if (cfg.format == Format::Json) {
    out << json{{"family", c.data.family}, {"p", c.data.p},       {"M", c.data.M},
                {"Mw", c.data.Mw},         {"K", c.data.K},       {"B", c.data.buffer},
                {"acc", c.data.acc},       {"residual", res.str()}, {"cache", c.hit ? "hit" : "written"},
                {"path", c.path.string()}}
               .dump(2)
        << "\n";
  } else {
    out << (c.hit ? "cache hit: " : "cache written: ") << c.path.string() << "\n"
        << "p = " << c.data.p << ", M = " << c.data.M << ", Mw = " << c.data.Mw << ", K = " << c.data.K
        << ", B = " << c.data.buffer << "\n"
        << "acc = " << c.data.acc << "\n"
        << "residual valuation = " << res.str() << (ok ? " (>= acc)" : " (BELOW acc)") << "\n";
  }
  return ok ? kOk : kInternal;
}

int cmd_verify(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  Connection conn = load(cfg);
  ExperimentOptions opt;
  opt.m_min = cfg.m_min;
  opt.m_max = cfg.effective_m_max();
  opt.window = cfg.window;
  opt.convention = cfg.convention;
  opt.vphi = cfg.vphi;
  opt.vphi_inv = cfg.vphi_inv;
  opt.points.clear();
  std::vector<ValidationReport> reports;
  for (const auto& z : target_points(cfg, conn)) {
    reports.push_back(validate_theorem_hypotheses(conn, z));
    opt.points.push_back(z.value());
  }
  if (int rc = report_hypotheses(reports, err); rc != kOk) return rc;
  CachedFrobenius c = load_or_compute_frobenius(conn, cfg.M, cfg.K, cfg.buffer, cache_dir(cfg));
  ExperimentTable tab = experiment_table(conn, c.data, opt);
  if (cfg.format == Format::Json)
    out << tab.json() << "\n";
  else
    out << (cfg.format == Format::Csv ? tab.csv() : tab.table());
  auto bad = tab.violations();
  for (const auto& r : bad)
    err << "THEOREM VIOLATION: p=" << r.p << " z=" << to_string(r.z) << " m=" << r.m
        << " measured=" << r.measured.str() << " bound=" << r.bound << "\n";
  return bad.empty() ? kOk : kTheoremViolation;
}

int cmd_fiber(const JobConfig& cfg, std::ostream& out, std::ostream&) {
  FiberFrobenius f = kedlaya_fiber_matrix(elliptic_example_fiber(0, cfg.p, cfg.M));
  const Valuation v = valuation(f.phi0);
  const Valuation vinv = inverse_valuation(f.phi0);
  std::vector<PAdicApprox> cp = characteristic_polynomial(f.phi0);
  json m = json::array();
  for (std::size_t i = 0; i < f.phi0.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < f.phi0.cols(); ++j) row.push_back(f.phi0(i, j).mantissa().get_str());
    m.push_back(row);
  }
  json cpj = json::array();
  for (const auto& c : cp) cpj.push_back(c.mantissa().get_str());
  if (cfg.format == Format::Json) {
    out << json{{"p", cfg.p},
                {"M", cfg.M},
                {"a_p", f.a_p.get_str()},
                {"phi0", m},
                {"charpoly", cpj},
                {"v_phi0", v.str()},
                {"v_phi0_inv", vinv.str()},
                {"series_terms", f.series_terms}}
               .dump(2)
        << "\n";
  } else {
    out << "fiber t = 0, p = " << cfg.p << ", M = " << cfg.M << "\n"
        << "a_p = " << f.a_p.get_str() << "\n"
        << "phi0 mod p^M = " << m.dump() << "\n"
        << "charpoly (low first) = " << cpj.dump() << "\n"
        << "v_p(phi0) = " << v.str() << "\n"
        << "v_p(phi0^-1) = " << vinv.str() << "\n"
        << "series terms = " << f.series_terms << "\n";
  }
  return kOk;
}

int cmd_delta_check(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  Connection conn = load(cfg);
  std::vector<Point> pts = target_points(cfg, conn);
  if (pts.empty()) throw UnsupportedInput("delta-check: no finite singular point to build a profile at");
  BoundProfile prof = make_profile(conn, pts.front(), cfg.vphi.value_or(kKnownVPhi),
                                   cfg.vphi_inv.value_or(kKnownVPhiInv), cfg.convention);
  DeltaCheckReport rep = delta_valuation_check(conn, prof, cfg.imax);
  if (cfg.format == Format::Json) {
    json viol = json::array();
    for (const auto& v : rep.violations) viol.push_back({{"i", v.i}, {"value", v.value}, {"bound", v.bound}});
    json vals = json::array();
    for (std::size_t i = 0; i < rep.values.size(); ++i) vals.push_back({val_str(rep.values[i]), rep.bounds[i]});
    out << json{{"p", prof.p}, {"imax", rep.i_max}, {"violations", viol}, {"values", vals}}.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    out << "i,v_on_V,f\n";
    for (std::size_t i = 0; i < rep.values.size(); ++i) out << i << "," << val_str(rep.values[i]) << "," << rep.bounds[i] << "\n";
  } else {
    out << "p = " << prof.p << ", i <= " << rep.i_max << ": " << rep.violations.size() << " violations\n";
    for (const auto& v : rep.violations) out << "  i=" << v.i << " v=" << v.value << " f=" << v.bound << "\n";
  }
  for (const auto& v : rep.violations)
    err << "THEOREM VIOLATION: v_on_V(Delta^(" << v.i << ")) = " << v.value << " < f = " << v.bound << "\n";
  return rep.violations.empty() ? kOk : kTheoremViolation;
}

int cmd_lift_change(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  Connection conn = load(cfg);
  const Point z = parse_point(cfg.z.value_or("-2"));
  if (z.is_infinity()) throw UnsupportedInput("lift-change: z must be finite");
  const int M = std::max<int>(cfg.M, static_cast<int>(cfg.m));
  CachedFrobenius c = load_or_compute_frobenius(conn, M, cfg.K, cfg.buffer, cache_dir(cfg));
  LiftCheckReport rep = local_lift_phi_check(conn, c.data, z.value(), static_cast<int>(cfg.m), cfg.window);
  if (cfg.format == Format::Json) {
    out << json{{"p", conn.prime()},
                {"z", z.str()},
                {"m", rep.m},
                {"terms", rep.terms},
                {"order", rep.order.str()},
                {"required", rep.required},
                {"v_phi_prime", rep.v_phi_prime},
                {"v_phi_plus_c", rep.v_phi_plus_c},
                {"passed", rep.passed}}
               .dump(2)
        << "\n";
  } else {
    out << "lift centered at z=" << z.str() << ", p = " << conn.prime() << ", m = " << rep.m << ", " << rep.terms
        << " terms\n"
        << "order(Phi') = " << rep.order.str() << " (required >= " << rep.required << ")\n"
        << "v_p(Phi') = " << rep.v_phi_prime << " (required >= " << rep.v_phi_plus_c << ")\n"
        << (rep.passed ? "PASS" : "FAIL") << "\n";
  }
  if (!rep.passed) {
    err << "THEOREM VIOLATION: " << rep.detail << "\n";
    return kTheoremViolation;
  }
  return kOk;
}

int run_job(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, int (*)(const JobConfig&, std::ostream&, std::ostream&)> commands = {
      {"exponents", cmd_exponents}, {"bounds", cmd_bounds},           {"deform", cmd_deform},
      {"verify", cmd_verify},       {"fiber", cmd_fiber},             {"delta-check", cmd_delta_check},
      {"lift-change", cmd_lift_change}};
  try {
    auto it = commands.find(cfg.command);
    if (it == commands.end()) throw UnsupportedInput("unknown command " + cfg.command);
    set_thread_count(cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency());
    // exponents reports unsupported primes through the hypothesis checks
    if (cfg.command != "exponents") cfg.validate();
    return it->second(cfg, out, err);
  } catch (const TheoremViolation& e) {
    err << "THEOREM VIOLATION: " << e.what() << "\n";
    return kTheoremViolation;
  } catch (const PrecisionError& e) {
    err << "precision exhausted: " << e.what() << "\n";
    if (e.required > 0) {
      const bool k_limited = std::string(e.what()).find("increase K") != std::string::npos;
      err << (k_limited ? "required K = " : "required Mw = ") << e.required << "\n";
    }
    return kPrecision;
  } catch (const UnsupportedInput& e) {
    err << "unsupported input: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"frobound: effective convergence bounds for Frobenius structures"};
  app.require_subcommand(1);
  JobConfig cfg;
  std::string format = "table";
  bool exclude_zero = false;
  const std::map<std::string, std::string> help = {
      {"exponents", "residue matrices, exponents and hypothesis checks per singular point"},
      {"bounds", "order bounds per m with variant annotations"},
      {"deform", "compute Phi, write the cache and check the Frobenius equation"},
      {"verify", "measured orders against the bounds"},
      {"fiber", "Frobenius matrix of the fiber at t = 0"},
      {"delta-check", "v_on_V(Delta^(i)) >= f(i)"},
      {"lift-change", "Phi in the lift centered at z and its order there"}};
  for (const auto& [name, text] : help) {
    CLI::App* sub = app.add_subcommand(name, text);
    sub->add_option("--family", cfg.family, "builtin id or connection file")->capture_default_str();
    sub->add_option("--p", cfg.p, "prime")->capture_default_str();
    sub->add_option("--M", cfg.M, "congruence target")->capture_default_str();
    sub->add_option("--K", cfg.K, "t-truncation")->capture_default_str();
    sub->add_option("--m-min", cfg.m_min)->capture_default_str();
    sub->add_option("--m-max", cfg.m_max, "0 means M")->capture_default_str();
    sub->add_option("--window", cfg.window)->capture_default_str();
    sub->add_option("--buffer", cfg.buffer)->capture_default_str();
    sub->add_option("--format", format)->check(CLI::IsMember({"table", "json", "csv"}))->capture_default_str();
    sub->add_option("--cache-dir", cfg.cache_dir);
    sub->add_option("--z", cfg.z, "point (default: finite singular points)");
    sub->add_option("--m", cfg.m)->capture_default_str();
    sub->add_option("--imax", cfg.imax)->capture_default_str();
    sub->add_option("--threads", cfg.threads, "0 uses the hardware concurrency");
    sub->add_flag("--exclude-zero", exclude_zero, "index sets start at 1");
    sub->add_option("--vphi", cfg.vphi);
    sub->add_option("--vphi-inv", cfg.vphi_inv);
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUnsupported;
  }
  cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Table;
  cfg.convention = exclude_zero ? IndexConvention::ExcludeZero : IndexConvention::IncludeZero;
  return run_job(cfg, out, err);
}

}  // namespace frobound::cli
