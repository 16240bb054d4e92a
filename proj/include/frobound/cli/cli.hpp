// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "frobound/bounds/bounds.hpp"

namespace frobound::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUnsupported = 2,
  kPrecision = 3,
  kTheoremViolation = 4,
};

enum class Format { Table, Json, Csv };

struct JobConfig {
  std::string command;
  /// Builtin id or path to a connection file.
  std::string family = "elliptic-example";
  long p = 3;
  int M = 6;
  std::size_t K = 256;
  long m_min = 1;
  /// 0 means M.
  long m_max = 0;
  int window = 24;
  int buffer = 5;
  IndexConvention convention = IndexConvention::IncludeZero;
  Format format = Format::Table;
  /// Empty means $FROBOUND_CACHE or ./.frobound-cache.
  std::string cache_dir;
  std::optional<std::string> z;
  long m = 3;
  long imax = 200;
  int threads = 0;
  std::optional<long> vphi;
  std::optional<long> vphi_inv;

  /// p odd prime, M >= 1, K >= 64, [m_min, m_max] within [1, M].
  void validate() const;
  long effective_m_max() const { return m_max > 0 ? m_max : M; }
};

int cmd_exponents(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bounds(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_deform(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fiber(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_delta_check(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_lift_change(const JobConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command and maps exceptions to exit codes.
int run_job(const JobConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs the job.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace frobound::cli
