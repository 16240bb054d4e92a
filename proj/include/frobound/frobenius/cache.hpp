// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "frobound/frobenius/deformation.hpp"

namespace frobound {

inline constexpr const char* kCacheMagic = "FROBCACHE1";

/// Identifies one Phi computation.
struct CacheKey {
  std::string family;
  long p = 0;
  int M = 0;
  std::size_t K = 0;
  int buffer = 0;
  FrobeniusLift lift;

  static CacheKey of(const FrobeniusData& data);
  /// Sanitized file name, e.g. "elliptic-example_p3_M6_K256_B5_standard.frobcache".
  std::string file_name() const;
};

/// `override_dir` if nonempty, else $FROBOUND_CACHE, else ./.frobound-cache.
std::filesystem::path cache_directory(const std::string& override_dir = {});

/// Line 1 the magic, line 2 the header, then one line per matrix entry with
/// mantissas reduced mod p^acc.
std::string serialize_cache(const FrobeniusData& data);
/// Throws ArithmeticError on a malformed file.
FrobeniusData parse_cache(const std::string& text);

/// Writes to a temporary file in `dir` and renames it into place.
std::filesystem::path write_cache(const std::filesystem::path& dir, const FrobeniusData& data);
/// The cached data for `key`, or nothing when the file is missing or its
/// header does not match (including the kernel version).
std::optional<FrobeniusData> read_cache(const std::filesystem::path& dir, const CacheKey& key);

struct CachedFrobenius {
  FrobeniusData data;
  bool hit = false;
  std::filesystem::path path;
};

/// read_cache, falling back to compute_frobenius followed by write_cache.
CachedFrobenius load_or_compute_frobenius(const Connection& conn, int M, std::size_t K, int buffer,
                                          const std::filesystem::path& dir);

}  // namespace frobound
