#pragma once

// Non-crossing partitions of [k] realized as permutations on a geodesic e -> gamma.
//
// Blocks are cycles traversed in increasing order, so NC(k) sits inside S_k as
// { s : |s| + dist(s, gamma) = k - 1 }. The partial order is s <= t iff
// dist(e, s) + dist(s, t) = dist(e, t) with both on the lattice.

#include "rmpu/numeric.hpp"
#include "rmpu/symgroup.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace rmpu {

bool is_noncrossing(const Permutation& p);

/// s <= t in the NC lattice (both arguments assumed non-crossing).
bool nc_leq(const Permutation& s, const Permutation& t);

/// Largest k accepted by enumerate_nc / enumerate_multichains.
inline constexpr int kNcCap = 12;

/// All of NC(k), generated directly (no filtering of S_k), in a canonical order
/// sorted by the image word.
std::vector<Permutation> enumerate_nc(int k);

/// s^{-1} gamma. Throws std::domain_error if s is crossing.
Permutation kreweras(const Permutation& s);

BigInt catalan(int n);
/// Number of m-multichains pi_1 <= ... <= pi_m in NC(k): binom((m+1)k, k) / (mk + 1).
BigInt fuss_catalan(int k, int m);

/// mu(a^{-1} b) = prod over cycles c of (-1)^{|c|-1} C_{|c|-1}.
std::int64_t mobius(const Permutation& a, const Permutation& b);
/// Moebius value of a single element (as a class function).
std::int64_t mobius(const Permutation& p);
/// Moebius value from a cycle type.
std::int64_t mobius_of_type(const std::vector<int>& cycle_type);

/// Tuples (pi_1 <= ... <= pi_m <= gamma), depth-first with distance pruning.
std::vector<std::vector<Permutation>> enumerate_multichains(int k, int m);

/// Same tuples streamed to a visitor; returns the count.
std::uint64_t for_each_multichain(int k, int m,
                                  const std::function<void(const std::vector<Permutation>&)>& visit);

/// Counts 2-chains without materializing them (k <= kNcCap).
std::uint64_t count_two_chains(int k);

/// Calls visit(pi, sigma) for each pair with
/// dist(e,pi) + dist(pi,sigma) + dist(sigma,gamma) = k - 1 + excess.
/// Returns the number of pairs visited. Requires k <= kEnumerationCap.
std::uint64_t for_each_pair_with_excess(int k, int excess,
                                        const std::function<void(const Permutation&, const Permutation&)>& visit);

/// Materialized genus-one pairs (excess 2). Throws ResourceError for k > 7.
std::vector<std::pair<Permutation, Permutation>> enumerate_genus_one_pairs(int k);

/// Streaming count of genus-one pairs; k <= kEnumerationCap.
std::uint64_t count_genus_one_pairs(int k);

struct CountRow {
  int k = 0;
  int m = 0;
  std::string family;
  std::uint64_t count = 0;
  double wall_ms = 0.0;
};

/// CSV with header k,m,family,count,wall_ms. Without timing the wall_ms column is dropped so
/// reruns are byte-identical.
void write_count_csv(std::ostream& os, const std::vector<CountRow>& rows, bool with_timing = true);

}  // namespace rmpu
