// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "frobound/frobenius/cache.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

namespace frobound {

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  for (char ch : s) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                    ch == '-' || ch == '.';
    out.push_back(ok ? ch : '_');
  }
  return out;
}

// Header values must not contain spaces; families from paths may.
std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '%' || ch == ' ' || ch == '=' || ch == '\n') {
      static const char* hex = "0123456789ABCDEF";
      out += '%';
      out += hex[(static_cast<unsigned char>(ch) >> 4) & 15];
      out += hex[static_cast<unsigned char>(ch) & 15];
    } else {
      out += ch;
    }
  }
  return out;
}

std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      out += static_cast<char>(std::stoi(s.substr(i + 1, 2), nullptr, 16));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string header_line(const CacheKey& key, int mw, int acc, const PAdicMatrix& phi0) {
  std::ostringstream os;
  os << "family=" << escape(key.family) << " p=" << key.p << " M=" << key.M << " Mw=" << mw << " K=" << key.K
     << " B=" << key.buffer << " lift=" << escape(key.lift.str()) << " kernel=" << kKernelVersion << " acc=" << acc
     << " phi0=";
  for (std::size_t i = 0; i < phi0.entries().size(); ++i) {
    const PAdicApprox& x = phi0.entries()[i];
    os << (i ? "," : "") << x.mantissa().get_str() << ":" << x.accuracy();
  }
  return os.str();
}

FrobeniusLift parse_lift(const std::string& s) {
  if (s == "standard") return FrobeniusLift::standard();
  if (s.rfind("centered:", 0) == 0) return FrobeniusLift::centered_at(parse_rational(s.substr(9)));
  throw ArithmeticError("cache: unknown lift " + s);
}

long to_long(const std::map<std::string, std::string>& kv, const std::string& k) {
  auto it = kv.find(k);
  if (it == kv.end()) throw ArithmeticError("cache: header lacks " + k);
  return std::stol(it->second);
}

}  // namespace

CacheKey CacheKey::of(const FrobeniusData& data) {
  return {data.family, data.p, data.M, data.K, data.buffer, data.lift};
}

std::string CacheKey::file_name() const {
  std::ostringstream os;
  os << sanitize(family) << "_p" << p << "_M" << M << "_K" << K << "_B" << buffer << "_" << sanitize(lift.str())
     << ".frobcache";
  return os.str();
}

std::filesystem::path cache_directory(const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("FROBOUND_CACHE"); env && *env) return env;
  return std::filesystem::path(".frobound-cache");
}

std::string serialize_cache(const FrobeniusData& data) {
  std::ostringstream os;
  os << kCacheMagic << "\n" << header_line(CacheKey::of(data), data.Mw, data.acc, data.phi0) << "\n";
  const Integer mod = ipow(data.p, static_cast<unsigned long>(data.acc));
  for (std::size_t a = 0; a < data.phi.rows(); ++a)
    for (std::size_t b = 0; b < data.phi.cols(); ++b) {
      os << a << " " << b;
      for (const Integer& c : data.phi(a, b).mantissas()) {
        Integer r = c % mod;
        if (r < 0) r += mod;
        os << " " << r.get_str();
      }
      os << "\n";
    }
  return os.str();
}

FrobeniusData parse_cache(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCacheMagic) throw ArithmeticError("cache: bad magic");
  if (!std::getline(is, line)) throw ArithmeticError("cache: missing header");
  std::map<std::string, std::string> kv;
  {
    std::istringstream hs(line);
    std::string tok;
    while (hs >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw ArithmeticError("cache: bad header token " + tok);
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
  }
  if (kv["kernel"] != kKernelVersion) throw ArithmeticError("cache: kernel version mismatch");
  FrobeniusData d;
  d.family = unescape(kv["family"]);
  d.p = to_long(kv, "p");
  d.M = static_cast<int>(to_long(kv, "M"));
  d.Mw = static_cast<int>(to_long(kv, "Mw"));
  d.K = static_cast<std::size_t>(to_long(kv, "K"));
  d.buffer = static_cast<int>(to_long(kv, "B"));
  d.acc = static_cast<int>(to_long(kv, "acc"));
  d.lift = parse_lift(unescape(kv["lift"]));
  if (d.acc < 1 || d.acc > d.Mw || d.K == 0) throw ArithmeticError("cache: inconsistent header");
  RingPtr ring = make_ring(d.p, d.Mw);

  std::vector<PAdicApprox> p0;
  {
    std::istringstream ps(kv["phi0"]);
    std::string item;
    while (std::getline(ps, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw ArithmeticError("cache: bad phi0 entry");
      p0.emplace_back(ring, Integer(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
    }
  }
  std::size_t r = 0;
  while (r * r < p0.size()) ++r;
  if (r == 0 || r * r != p0.size()) throw ArithmeticError("cache: phi0 is not square");
  d.phi0 = PAdicMatrix(r, r, p0);

  std::vector<TruncSeries> entries(r * r, TruncSeries(ring, d.K));
  std::vector<bool> seen(r * r, false);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::size_t a = 0, b = 0;
    if (!(ls >> a >> b) || a >= r || b >= r) throw ArithmeticError("cache: bad entry line");
    std::vector<Integer> coeffs;
    std::string c;
    while (ls >> c) coeffs.emplace_back(c);
    if (coeffs.size() != d.K) throw ArithmeticError("cache: entry length differs from K");
    entries[a * r + b] = TruncSeries(ring, std::move(coeffs), d.acc);
    seen[a * r + b] = true;
  }
  for (bool s : seen)
    if (!s) throw ArithmeticError("cache: missing entry");
  d.phi = SeriesMatrix(r, r, std::move(entries));
  return d;
}

std::filesystem::path write_cache(const std::filesystem::path& dir, const FrobeniusData& data) {
  static std::atomic<unsigned long> counter{0};
  std::filesystem::create_directories(dir);
  const std::filesystem::path target = dir / CacheKey::of(data).file_name();
  const std::filesystem::path tmp =
      dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cache: cannot write " + tmp.string());
    out << serialize_cache(data);
    out.flush();
    if (!out) throw Error("cache: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
  return target;
}

std::optional<FrobeniusData> read_cache(const std::filesystem::path& dir, const CacheKey& key) {
  const std::filesystem::path path = dir / key.file_name();
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    FrobeniusData d = parse_cache(ss.str());
    if (d.family != key.family || d.p != key.p || d.M != key.M || d.K != key.K || d.buffer != key.buffer ||
        !(d.lift == key.lift))
      return std::nullopt;
    return d;
  } catch (const ArithmeticError&) {
    return std::nullopt;
  }
}

CachedFrobenius load_or_compute_frobenius(const Connection& conn, int M, std::size_t K, int buffer,
                                          const std::filesystem::path& dir) {
  CacheKey key{conn.family(), conn.prime(), M, K, buffer, FrobeniusLift::standard()};
  if (auto d = read_cache(dir, key)) return {std::move(*d), true, dir / key.file_name()};
  FrobeniusData d = compute_frobenius(conn, M, K, buffer);
  auto path = write_cache(dir, d);
  return {std::move(d), false, path};
}

}  // namespace frobound
