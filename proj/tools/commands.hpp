#pragma once

#include "rmpu/io.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace rmpu::cli {

/// Flags shared by all subcommands; unset values keep their defaults.
struct Options {
  std::vector<int> k{2};
  int d = 2;
  int r = 1;
  int n = 1;
  std::int64_t dim = 0;
  std::vector<std::int64_t> chi_list;
  std::int64_t samples = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string manifest;
  std::string moments_a;
  std::string moments_b;
  std::string observable_a = "projector";
  std::string observable_b = "projector";
  std::string variant = "staircase";
  std::string table;
  /// Canonical command line, hashed for provenance when no manifest is given.
  std::string invocation;
};

/// Each returns the process exit code: 0 iff every requested check passed.
int wg_table(const Options& o);
int nc_count(const Options& o);
int cumulants(const Options& o);
int otoc_exact(const Options& o);
int otoc_mc(const Options& o);
int frame_potential(const Options& o);
int verify_identity(const Options& o);
int table_report(const Options& o);
int run_manifest(const Options& o);

/// {"error": {"type", "message"}} on one line.
std::string error_json(const std::string& type, const std::string& message);

}  // namespace rmpu::cli
