#pragma once

// Dense Monte Carlo for Haar and RMPU ensembles: OTOCs and frame potentials.

#include "rmpu/geometry.hpp"
#include "rmpu/numeric.hpp"
#include "rmpu/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rmpu {

/// Largest total dimension simulated densely.
inline constexpr std::int64_t kDenseSimCap = 256;

struct EnsembleConfig {
  enum class Kind { rmpu, global_haar };
  /// ascending: U = U_1 U_2 ... U_n. mirrored: U = U_n ... U_1.
  enum class Orientation { ascending, mirrored };

  Kind kind = Kind::rmpu;
  RmpuGeometry geometry;
  /// Global Haar only: total dimension and the site dimension used to place observables.
  std::int64_t global_dim = 0;
  int global_site_dim = 0;
  Orientation orientation = Orientation::ascending;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;

  static EnsembleConfig global_haar(std::int64_t dim, std::uint64_t seed, std::int64_t samples, int site_dim = 0);
  static EnsembleConfig rmpu(const RmpuGeometry& geometry, std::uint64_t seed, std::int64_t samples);

  std::int64_t dim() const;
  int site_dim() const;
  int sites() const;
  /// Throws ResourceError above kDenseSimCap, std::invalid_argument otherwise.
  void validate() const;
};

/// Observable matrix on the contiguous sites first_site .. first_site + num_sites - 1 (1-based).
struct ObservableSpec {
  MatrixXc matrix;
  int first_site = 1;
  int num_sites = 1;
  bool traceless = false;
  double norm_bound = 1.0;

  /// Hermiticity, tracelessness flag and norm bound, all to 1e-12.
  void validate() const;
};

struct EstimateRecord {
  std::string quantity;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  /// Non-empty when the estimate is too noisy to be useful.
  std::string guidance;
};

/// Haar unitary from a complex Ginibre matrix: Q R with R's diagonal rotated to positive reals.
MatrixXc sample_haar_unitary(std::int64_t dim, RngStream& rng);

/// One draw from the ensemble (global Haar or dense staircase/two-floor RMPU).
MatrixXc build_rmpu(const EnsembleConfig& config, RngStream& rng);

/// I_{left} (x) m (x) I_{right} with m acting on sites first_site.. (1-based).
MatrixXc embed_operator(const MatrixXc& m, int first_site, int site_dim, int sites);

/// spec.matrix placed into the full system of config.
MatrixXc embed_observable(const ObservableSpec& spec, const EnsembleConfig& config);

/// Mean of (1/D) Re tr[(U^dagger A U B)^k]. Sample i draws from stream (seed, i).
EstimateRecord mc_otoc(const EnsembleConfig& config, const ObservableSpec& a, const ObservableSpec& b, int k);

/// Mean of |tr(U V^dagger)|^{2k} over disjoint pairs; U from stream 2i and V from stream 2i+1.
EstimateRecord mc_frame_potential(const EnsembleConfig& config, int k);

/// Operator-entanglement entropy (natural log) and Schmidt rank of U across the cut after `left_sites`.
struct OperatorEntanglement {
  double entropy = 0.0;
  int schmidt_rank = 0;
};
OperatorEntanglement operator_entanglement(const MatrixXc& u, int site_dim, int sites, int left_sites);

enum class ObservableKind { pauli_string, random_hermitian, projector, shifted_projector };
ObservableKind parse_observable_kind(const std::string& text);

struct ObservableParams {
  /// pauli_string: one letter per site from {I, X, Y, Z}; site_dim must be 2.
  std::string pauli;
  /// projector kinds: rank of the diagonal projector.
  std::int64_t rank = 0;
  /// random_hermitian: stream used to draw the GUE matrix.
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Hermitian observable with operator norm <= 1 on num_sites sites of dimension site_dim.
ObservableSpec make_observable(ObservableKind kind, const ObservableParams& params, int first_site, int num_sites,
                               int site_dim);

/// quantity,mean,stderr,samples,seed,guidance
void write_estimate_csv(std::ostream& os, const std::vector<EstimateRecord>& rows);

}  // namespace rmpu
