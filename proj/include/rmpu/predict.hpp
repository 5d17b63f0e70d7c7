#pragma once

// Exact and asymptotic predictions for Haar and RMPU averaged OTOCs and frame potentials.
//
// OTOC: C = (1/D) E tr[(A_U B)^k], A_U = U^dagger A U. For a single A and B only the
// normalized moments enter. Templates are instantiated for Rational and double.

#include "rmpu/freeprob.hpp"
#include "rmpu/geometry.hpp"
#include "rmpu/numeric.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rmpu {

/// tr[(M_1 (x) ... (x) M_k) T_pi] = prod over cycles (i, pi^{-1}(i), ...) of tr[M_i M_{pi^{-1}(i)} ...].
Complex replica_trace(const std::vector<MatrixXc>& ops, const Permutation& pi);

/// (1/D) sum_{pi,sigma} Wg(pi,sigma) D^{#pi} <A>_pi D^{#(sigma^{-1}gamma)} <B>_{sigma^{-1}gamma}. D > k.
template <typename Scalar>
Scalar haar_otoc_exact(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, std::int64_t dim, int k);

/// (1/D) E tr[A^(1)_U B^(1) ... A^(k)_U B^(k)] for explicit D x D operators.
Complex haar_multi_otoc_exact(const std::vector<MatrixXc>& a, const std::vector<MatrixXc>& b);

/// Exact RMPU average with A inside the first gate and B inside the last gate. b_site
/// (1-based, 0 = default) places a single-site B at that site instead; gates that cannot
/// reach it drop out, leaving min(b_site, n) layers. The two-floor variant gives the same
/// value for this placement.
template <typename Scalar>
Scalar rmpu_otoc_exact(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, const RmpuGeometry& geom,
                       int k, int b_site = 0);

/// Leading-order multichain sum over pi_1 <= sigma_1 <= ... <= sigma_n <= gamma. Throws
/// std::logic_error if it fails to collapse onto free_otoc_prediction (exact mode) and
/// returns the collapsed value.
template <typename Scalar>
Scalar rmpu_otoc_leading(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int n, int k);

/// Leading-order RMPU value for product observables with one factor per gate:
/// sum over 2n-multichains of prod_i mu(pi_i, sigma_i) <A>_{pi_i} <B>_{sigma_i^{-1} gamma}.
template <typename Scalar>
Scalar rmpu_otoc_nonlocal_leading(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int n, int k);

/// Moments of the n-fold tensor power, m_j -> m_j^n.
template <typename Scalar>
MomentSequence<Scalar> tensor_power_moments(const MomentSequence<Scalar>& m, int n);

/// c_k = sum_{2-chains} Wg^(1) <A>_pi <B>_{sigma^{-1}gamma} + sum_{genus one} mu <A>_pi <B>_{sigma^{-1}gamma}.
template <typename Scalar>
Scalar subleading_coeff_haar(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int k);

/// Coefficient of chi^{-2} in the RMPU OTOC:
///   (n/d^2) sum_{2-chains} Wg^(1) <A><B> + sum_{f_n = 2} prod_i mu(pi_i,sigma_i) d^{-g_n} <A>_{pi_1} <B>_{sigma_n^{-1}gamma}.
/// Evaluated by a transfer recursion over (permutation, accumulated excess).
template <typename Scalar>
Scalar subleading_coeff_rmpu(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int n, int d, int k);

/// Closed forms of c_k in terms of free cumulants, k <= 4.
template <typename Scalar>
Scalar closed_form_c(const CumulantSequence<Scalar>& ka, const CumulantSequence<Scalar>& kb, int k);

/// Closed-form split of the RMPU coefficient: c~ = (n/d^2 - (n-1)) a_k + b_k / d^{2n}, k <= 4.
template <typename Scalar>
struct RmpuSplit {
  Scalar a;
  Scalar b;
};
template <typename Scalar>
RmpuSplit<Scalar> closed_form_rmpu_split(const CumulantSequence<Scalar>& ka, const CumulantSequence<Scalar>& kb, int k);
template <typename Scalar>
Scalar closed_form_c_tilde(const CumulantSequence<Scalar>& ka, const CumulantSequence<Scalar>& kb, int k, int n, int d);

/// k! as an integer.
BigInt frame_potential_haar(int k);

/// Exact contraction of the paired-replica network; staircase only (UnsupportedError otherwise).
template <typename Scalar>
Scalar frame_potential_rmpu_exact(const RmpuGeometry& geom, int k);

/// k! (1 + k(k-1)/(2 chi^2) (n - 1 - n/d^2 + 1/d^{2n})).
template <typename Scalar>
Scalar frame_potential_rmpu_asymptotic(const RmpuGeometry& geom, int k);

struct IdentityReport {
  std::int64_t dim = 0;
  int k = 0;
  std::size_t terms = 0;
  double lhs = 0.0;  // sum over Pauli assignments of |C / D^{2k}|^2
  double rhs = 0.0;  // F / D^{2(k+1)}
  double relative_error = 0.0;
  bool passed = false;
};

/// Exhaustive Pauli check of sum |C/D^{2k}|^2 = F / D^{2(k+1)} for the Haar ensemble on
/// log2(D) qubits. frame_value overrides F (defaults to k!) for negative controls.
IdentityReport verify_frame_otoc_identity(std::int64_t dim, int k, double frame_value = -1.0,
                                          double tolerance = 1e-10);

/// All Pauli strings on q qubits (unnormalized, P^2 = 1), in base-4 order I,X,Y,Z per site.
std::vector<MatrixXc> pauli_strings(int qubits);

struct PredictionRow {
  std::string quantity;
  int k = 0;
  int d = 0;
  int r = 0;
  int n = 0;
  std::int64_t chi = 0;
  std::int64_t dim = 0;
  double value = 0.0;
  std::string order_tag;
  double residual_estimate = 0.0;
};

/// CSV with header quantity,k,d,r,n,chi,D,value,order_tag,residual_estimate.
void write_prediction_csv(std::ostream& os, const std::vector<PredictionRow>& rows);

}  // namespace rmpu
