#pragma once

// Brute-force reference implementations shared by unit and acceptance tests. None of
// these use the library's class tables, lattice routines or transfer contractions.

#include "rmpu/numeric.hpp"
#include "rmpu/symgroup.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using rmpu::Complex;
using rmpu::MatrixXc;
using rmpu::Permutation;
using rmpu::Rational;

/// Blocks of p as sorted element sets.
std::vector<std::vector<int>> blocks(const Permutation& p);

/// Non-crossing partitions realized as permutations: each block is a cycle traversed in
/// increasing order and no two blocks cross. Filters all of S_k.
std::vector<Permutation> nc_by_crossing(int k);

/// Block refinement order on set partitions.
bool refines(const Permutation& a, const Permutation& b);

/// Moebius function of the refinement lattice by the defining recursion, for all
/// comparable pairs of nc_by_crossing(k).
std::map<std::pair<Permutation, Permutation>, std::int64_t> mobius_by_recursion(int k);

/// G(i,j) = D^{#(pi_i^{-1} pi_j)} over rmpu::enumerate(k), from num_cycles directly.
rmpu::Matrix<Rational> gram_matrix(std::int64_t dim, int k);

/// Replica permutation on (C^dim)^{(x)k}: slot pi(i) of the output holds digit i of the input.
MatrixXc permutation_operator(const Permutation& pi, std::int64_t dim);

MatrixXc kron(const MatrixXc& a, const MatrixXc& b);
MatrixXc kron_all(const std::vector<MatrixXc>& ops);

/// sum_{pi,sigma} Wg(pi^{-1} sigma) tr_S[X (T_sigma^dagger (x) 1)] (x) T_pi on the sites
/// first..first+span-1 of an N-site chain of local dimension d, in every replica.
/// wg_classes gives Wg on each class of rmpu::class_index(k).
MatrixXc partial_twirl(const MatrixXc& x, int d, int sites, int first, int span, int k, const std::vector<double>& wg_values);

/// (1/D) sum_{a,b} X[a;b] prod_i B_i[b_i, a_{i+1}]; X lives on (C^D)^{(x)k}.
Complex index_otoc(const MatrixXc& x, const std::vector<MatrixXc>& b, std::int64_t dim);

/// Averaged OTOC of an explicit gate sequence by successive partial twirls of A^{(x)k}.
/// gates lists first sites of (r+1)-site gates, innermost (applied to A first) first.
double gate_sequence_otoc(const MatrixXc& a, const MatrixXc& b, int d, int sites, int r, const std::vector<int>& gates, int k);

/// Exact inverse of the Gram matrix on class values, by floating-point solve.
std::vector<double> weingarten_values(std::int64_t dim, int k);

/// Hermitian matrix with operator norm 1 from a fixed-seed complex Gaussian.
MatrixXc random_hermitian(std::int64_t dim, std::uint64_t seed);

/// Normalized moments of a diagonal matrix with the given spectrum.
std::vector<Rational> spectrum_moments(const std::vector<Rational>& spectrum, int order);

/// Random rational with numerator in [-range, range] and denominator in [1, range].
Rational random_rational(std::uint64_t& state, int range);

}  // namespace oracle
