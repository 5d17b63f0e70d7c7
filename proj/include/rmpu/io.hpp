#pragma once

// File formats: moment vectors, Weingarten caches, observables and experiment manifests.

#include "rmpu/freeprob.hpp"
#include "rmpu/mcsim.hpp"
#include "rmpu/numeric.hpp"
#include "rmpu/weingarten.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rmpu {

using Json = nlohmann::json;

/// Moment vector read from JSON. Entries that are integers or rational strings ("3/4", "0.25")
/// stay exact; any floating-point literal makes the whole vector inexact.
struct MomentFile {
  bool exact = true;
  MomentSequence<Rational> rational;
  MomentSequence<double> real;
};

MomentFile moments_from_json(const Json& j);
MomentFile read_moment_file(const std::string& path);
Json moments_to_json(const MomentSequence<Rational>& m);

/// {"format": "rmpu-weingarten", "version": 1, "dim", "k", "classes": [{"cycle_type", "num", "den"}]}
Json weingarten_to_json(const WeingartenTable<Rational>& table);
/// Validates the header and that the classes cover the partitions of k.
WeingartenTable<Rational> weingarten_from_json(const Json& j);

/// {"matrix": [[[re, im], ...], ...], "first_site", "num_sites", "traceless", "norm_bound"}
Json observable_to_json(const ObservableSpec& spec);
ObservableSpec observable_from_json(const Json& j);

inline constexpr int kManifestSchemaVersion = 1;

struct ExperimentManifest {
  std::string quantity;
  /// Parameter lists keyed by k, d, r, n, chi, D, M.
  std::map<std::string, std::vector<std::int64_t>> grid;
  /// Free-form blocks interpreted per quantity ("moments", "observables", "checks").
  Json moments;
  Json observables;
  std::vector<std::string> checks;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  std::string out;
  /// FNV-1a of the canonical JSON dump, as 16 hex digits.
  std::string hash;

  const std::vector<std::int64_t>& axis(const std::string& name) const;
};

/// Throws std::invalid_argument with a field path on schema violations.
ExperimentManifest parse_manifest(const Json& j);
ExperimentManifest read_manifest(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t value);

/// "# key=value" provenance lines written at the top of every output file.
std::string provenance_header(const std::string& manifest_hash, std::uint64_t seed);

}  // namespace rmpu
