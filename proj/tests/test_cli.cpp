// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "frobound/cli/cli.hpp"

using namespace frobound;

namespace {

struct Result {
  int rc;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "frobound");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int rc = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::string temp_cache(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("frobound-cli-" + name);
  std::filesystem::remove_all(d);
  return d.string();
}

}  // namespace

TEST_CASE("exponents command") {
  Result r = run_cli({"exponents", "--family", "elliptic-example", "--p", "3", "--format", "json"});
  CHECK(r.rc == 0);
  auto j = nlohmann::json::parse(r.out);
  std::map<std::string, std::vector<std::string>> ex;
  for (const auto& pt : j["singular_points"]) ex[pt["z"]] = pt["exponents"].get<std::vector<std::string>>();
  CHECK(ex["2"] == std::vector<std::string>{"-1/4", "1/4"});
  CHECK(ex["-2"] == std::vector<std::string>{"0", "0"});

  Result two = run_cli({"exponents", "--p", "2"});
  CHECK(two.rc == 2);
  CHECK(two.err.find("hypothesis failure") != std::string::npos);

  auto file = std::filesystem::temp_directory_path() / "frobound-zero-connection.txt";
  std::ofstream(file) << "# trivial connection\n1 5\n0\n";
  Result z = run_cli({"exponents", "--family", file.string()});
  CHECK(z.rc == 0);
  CHECK(z.out.find("no singular points") != std::string::npos);
  std::filesystem::remove(file);
}

TEST_CASE("bounds command") {
  Result r = run_cli({"bounds", "--p", "3", "--z", "-2", "--M", "10", "--format", "json"});
  CHECK(r.rc == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 10);
  for (const auto& row : j["rows"]) CHECK(row["bound"].get<long>() == -3 * row["g"].get<long>());

  Result p5 = run_cli({"bounds", "--p", "5", "--z", "2", "--M", "4", "--format", "csv"});
  CHECK(p5.rc == 0);
  CHECK(p5.out.find("5,2,2,1,1,1,-6,base") != std::string::npos);

  Result none = run_cli({"bounds", "--p", "5", "--z", "1", "--M", "5", "--format", "json"});
  for (const auto& row : nlohmann::json::parse(none.out)["rows"]) CHECK(row["bound"].get<long>() == 0);

  CHECK(run_cli({"bounds", "--p", "9"}).rc == 2);
  CHECK(run_cli({"bounds", "--p", "3", "--M", "4", "--m-max", "6"}).rc == 2);
}

TEST_CASE("deform command and cache") {
  const std::string dir = temp_cache("deform");
  Result first = run_cli({"deform", "--p", "3", "--M", "6", "--K", "256", "--cache-dir", dir});
  CHECK(first.rc == 0);
  CHECK(first.out.find("cache written") != std::string::npos);
  CHECK(first.out.find("(>= acc)") != std::string::npos);
  auto file = std::filesystem::path(dir) / "elliptic-example_p3_M6_K256_B5_standard.frobcache";
  std::ifstream in(file);
  std::stringstream bytes;
  bytes << in.rdbuf();

  Result second = run_cli({"deform", "--p", "3", "--M", "6", "--K", "256", "--cache-dir", dir, "--threads", "3"});
  CHECK(second.rc == 0);
  CHECK(second.out.find("cache hit") != std::string::npos);
  std::ifstream in2(file);
  std::stringstream bytes2;
  bytes2 << in2.rdbuf();
  CHECK(bytes.str() == bytes2.str());

  Result low = run_cli({"deform", "--p", "3", "--M", "6", "--K", "256", "--buffer", "0", "--cache-dir", dir});
  CHECK(low.rc == 3);
  CHECK(low.err.find("required Mw") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify command") {
  const std::string dir = temp_cache("verify");
  Result r = run_cli({"verify", "--p", "7", "--M", "6", "--K", "1024", "--z", "2", "--format", "json", "--cache-dir", dir});
  CHECK(r.rc == 0);
  auto j = nlohmann::json::parse(r.out);
  for (const auto& row : j["rows"]) {
    const long m = row["m"].get<long>();
    if (m >= 2) CHECK(row["measured_order"].get<long>() == 2 - 7 * (m - 1));
  }
  Result small = run_cli({"verify", "--p", "3", "--M", "12", "--K", "128", "--cache-dir", dir});
  CHECK(small.rc == 3);
  CHECK(small.err.find("increase K") != std::string::npos);

  // a false v_p(Phi) = 5 empties the index set of g, so the bound becomes 0
  Result bad = run_cli({"verify", "--p", "3", "--M", "4", "--K", "256", "--z", "-2", "--vphi", "5", "--vphi-inv", "-5",
                        "--cache-dir", dir});
  CHECK(bad.rc == 4);
  CHECK(bad.err.find("THEOREM VIOLATION") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("fiber, delta-check and lift-change commands") {
  Result f = run_cli({"fiber", "--p", "3", "--format", "json"});
  CHECK(f.rc == 0);
  auto j = nlohmann::json::parse(f.out);
  CHECK(j["a_p"] == "-2");
  CHECK(j["v_phi0"] == "0");
  CHECK(j["v_phi0_inv"] == "-1");

  Result d = run_cli({"delta-check", "--p", "3", "--imax", "200"});
  CHECK(d.rc == 0);
  CHECK(d.out.find("0 violations") != std::string::npos);

  const std::string dir = temp_cache("lift");
  Result l = run_cli({"lift-change", "--z", "-2", "--m", "3", "--K", "512", "--cache-dir", dir, "--format", "json"});
  CHECK(l.rc == 0);
  auto lj = nlohmann::json::parse(l.out);
  CHECK(lj["passed"] == true);
  CHECK(lj["order"] == "0");
  std::filesystem::remove_all(dir);

  CHECK(run_cli({"nonsense"}).rc == 2);
}
