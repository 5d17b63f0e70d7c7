#include "oracles.hpp"
#include "rmpu/ncposet.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

using namespace rmpu;

namespace {

BigInt binom(int n, int r) {
  BigInt v = 1;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

}  // namespace

TEST(NonCrossing, EnumerationMatchesCrossingDefinition) {
  for (int k = 1; k <= 7; ++k) {
    auto lib = enumerate_nc(k);
    auto ref = oracle::nc_by_crossing(k);
    std::sort(lib.begin(), lib.end());
    std::sort(ref.begin(), ref.end());
    EXPECT_EQ(lib, ref) << "k=" << k;
    EXPECT_EQ(BigInt(lib.size()), catalan(k));
    for (const auto& p : lib) EXPECT_TRUE(is_noncrossing(p));
  }
}

TEST(NonCrossing, GeodesicCharacterization) {
  const Permutation gamma = Permutation::canonical_cycle(5);
  std::set<Permutation> nc;
  for (const auto& p : oracle::nc_by_crossing(5)) nc.insert(p);
  for (const auto& p : enumerate(5)) {
    EXPECT_EQ(length(p) + cayley_distance(p, gamma) == 4, nc.contains(p));
  }
}

TEST(NonCrossing, OrderIsRefinement) {
  const auto nc = enumerate_nc(5);
  for (const auto& a : nc) {
    for (const auto& b : nc) EXPECT_EQ(nc_leq(a, b), oracle::refines(a, b));
  }
}

TEST(NonCrossing, KrewerasComplement) {
  for (int k = 1; k <= 8; ++k) {
    for (const auto& s : enumerate_nc(k)) {
      const Permutation c = kreweras(s);
      EXPECT_EQ(num_cycles(s) + num_cycles(c), k + 1);
      EXPECT_TRUE(is_noncrossing(c));
    }
  }
  EXPECT_THROW(kreweras(parse_cycles("(13)(24)", 4)), std::domain_error);
}

TEST(Mobius, MatchesDefiningRecursion) {
  for (int k = 1; k <= 5; ++k) {
    for (const auto& [pair, mu] : oracle::mobius_by_recursion(k)) {
      EXPECT_EQ(mobius(pair.first, pair.second), mu) << to_cycle_string(pair.first) << " " << to_cycle_string(pair.second);
    }
  }
}

TEST(Mobius, FullCycleIsSignedCatalan) {
  for (int k = 1; k <= 10; ++k) {
    const BigInt c = catalan(k - 1);
    const BigInt expected = (k % 2 == 1) ? c : BigInt(-c);
    EXPECT_EQ(BigInt(mobius(Permutation::canonical_cycle(k))), expected);
  }
}

TEST(Counts, FussCatalanTwoChains) {
  for (int k = 1; k <= 9; ++k) {
    EXPECT_EQ(BigInt(count_two_chains(k)), binom(3 * k, k) / (2 * k + 1));
    EXPECT_EQ(fuss_catalan(k, 2), binom(3 * k, k) / (2 * k + 1));
  }
  for (int k = 1; k <= 5; ++k) {
    for (int m = 1; m <= 3; ++m) EXPECT_EQ(BigInt(enumerate_multichains(k, m).size()), fuss_catalan(k, m));
  }
}

TEST(Counts, GenusOnePairsAgreeWithBruteForce) {
  const std::vector<std::uint64_t> expected{0, 1, 21, 270, 2860};
  for (int k = 1; k <= 5; ++k) {
    const Permutation gamma = Permutation::canonical_cycle(k);
    std::uint64_t brute = 0;
    for (const auto& p : enumerate(k)) {
      for (const auto& s : enumerate(k)) {
        if (length(p) + cayley_distance(p, s) + cayley_distance(s, gamma) == k + 1) ++brute;
      }
    }
    EXPECT_EQ(brute, expected[static_cast<std::size_t>(k - 1)]);
    EXPECT_EQ(count_genus_one_pairs(k), brute);
    EXPECT_EQ(enumerate_genus_one_pairs(k).size(), brute);
  }
  EXPECT_THROW(enumerate_genus_one_pairs(8), ResourceError);
}

TEST(Counts, CsvReport) {
  std::ostringstream os;
  write_count_csv(os, {{2, 2, "genus1_pairs", 1, 0.5}});
  EXPECT_EQ(os.str(), "k,m,family,count,wall_ms\n2,2,genus1_pairs,1,0.5\n");
  std::ostringstream plain;
  write_count_csv(plain, {{2, 2, "genus1_pairs", 1, 0.5}}, false);
  EXPECT_EQ(plain.str(), "k,m,family,count\n2,2,genus1_pairs,1\n");
}
