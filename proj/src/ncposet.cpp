#include "rmpu/ncposet.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace rmpu {

namespace {

void require_nc_cap(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k > kNcCap) {
    throw ResourceError("NC(" + std::to_string(k) + ") exceeds the cap k <= " + std::to_string(kNcCap));
  }
}

// Non-crossing set partitions of {0..k-1} built left to right: element i either
// opens a new block or joins an open block that is not shadowed by a later one.
void extend_nc(int i, int k, std::vector<int>& block_of, std::vector<int>& last_in_block,
               std::vector<Permutation>& out) {
  if (i == k) {
    std::vector<std::vector<int>> blocks(last_in_block.size());
    for (int x = 0; x < k; ++x) blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(x)])].push_back(x);
    std::vector<int> images(static_cast<std::size_t>(k));
    for (const auto& b : blocks) {
      for (std::size_t j = 0; j < b.size(); ++j) images[static_cast<std::size_t>(b[j])] = b[(j + 1) % b.size()];
    }
    out.emplace_back(images);
    return;
  }
  // Joining block b is allowed iff no other block has an element strictly between
  // last_in_block[b] and i, i.e. b owns the most recent element among blocks still
  // "open" to the right. Equivalently walk back from i-1 along the nesting stack.
  const int nblocks = static_cast<int>(last_in_block.size());
  for (int b = 0; b < nblocks; ++b) {
    const int last = last_in_block[static_cast<std::size_t>(b)];
    bool ok = true;
    for (int x = last + 1; x < i && ok; ++x) {
      const int other = block_of[static_cast<std::size_t>(x)];
      // Some element after `last` belongs to a block that started before `last`: crossing.
      for (int y = 0; y < last; ++y) {
        if (block_of[static_cast<std::size_t>(y)] == other) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    block_of[static_cast<std::size_t>(i)] = b;
    last_in_block[static_cast<std::size_t>(b)] = i;
    extend_nc(i + 1, k, block_of, last_in_block, out);
    last_in_block[static_cast<std::size_t>(b)] = last;
  }
  block_of[static_cast<std::size_t>(i)] = nblocks;
  last_in_block.push_back(i);
  extend_nc(i + 1, k, block_of, last_in_block, out);
  last_in_block.pop_back();
}

}  // namespace

bool is_noncrossing(const Permutation& p) {
  const int k = p.degree();
  return length(p) + cayley_distance(p, Permutation::canonical_cycle(k)) == k - 1;
}

bool nc_leq(const Permutation& s, const Permutation& t) {
  return length(s) + cayley_distance(s, t) == length(t);
}

std::vector<Permutation> enumerate_nc(int k) {
  require_nc_cap(k);
  std::vector<Permutation> out;
  std::vector<int> block_of(static_cast<std::size_t>(k), -1);
  std::vector<int> last_in_block;
  extend_nc(0, k, block_of, last_in_block, out);
  std::sort(out.begin(), out.end());
  return out;
}

Permutation kreweras(const Permutation& s) {
  if (!is_noncrossing(s)) {
    throw std::domain_error("Kreweras complement of crossing permutation " + to_cycle_string(s) +
                            " leaves the NC lattice");
  }
  return s.inverse() * Permutation::canonical_cycle(s.degree());
}

BigInt catalan(int n) {
  if (n < 0) throw std::invalid_argument("catalan index must be non-negative");
  return fuss_catalan(n, 1);
}

BigInt fuss_catalan(int k, int m) {
  if (k < 0 || m < 0) throw std::invalid_argument("fuss_catalan arguments must be non-negative");
  // binom((m+1)k, k) / (mk + 1)
  BigInt binom = 1;
  const int top = (m + 1) * k;
  for (int i = 1; i <= k; ++i) {
    binom *= top - k + i;
    binom /= i;
  }
  return binom / (m * k + 1);
}

std::int64_t mobius_of_type(const std::vector<int>& cycle_type) {
  std::int64_t value = 1;
  for (int len : cycle_type) {
    const auto c = catalan(len - 1).convert_to<std::int64_t>();
    value *= (len % 2 == 1) ? c : -c;
  }
  return value;
}

std::int64_t mobius(const Permutation& p) { return mobius_of_type(p.cycle_type()); }

std::int64_t mobius(const Permutation& a, const Permutation& b) { return mobius(a.inverse() * b); }

std::uint64_t for_each_multichain(int k, int m,
                                  const std::function<void(const std::vector<Permutation>&)>& visit) {
  if (m < 1) throw std::invalid_argument("multichain length must be at least 1");
  const std::vector<Permutation> nc = enumerate_nc(k);
  const Permutation gamma = Permutation::canonical_cycle(k);
  std::vector<int> len(nc.size());
  std::vector<int> to_gamma(nc.size());
  for (std::size_t i = 0; i < nc.size(); ++i) {
    len[i] = length(nc[i]);
    to_gamma[i] = cayley_distance(nc[i], gamma);
  }
  std::vector<Permutation> chain;
  std::uint64_t count = 0;
  std::function<void(std::size_t)> extend = [&](std::size_t prev) {
    if (static_cast<int>(chain.size()) == m) {
      ++count;
      visit(chain);
      return;
    }
    for (std::size_t j = 0; j < nc.size(); ++j) {
      if (len[j] < len[prev]) continue;
      if (cayley_distance(nc[prev], nc[j]) + len[prev] != len[j]) continue;
      chain.push_back(nc[j]);
      extend(j);
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < nc.size(); ++i) {
    chain.assign(1, nc[i]);
    extend(i);
  }
  (void)to_gamma;
  return count;
}

std::vector<std::vector<Permutation>> enumerate_multichains(int k, int m) {
  std::vector<std::vector<Permutation>> out;
  for_each_multichain(k, m, [&](const std::vector<Permutation>& c) { out.push_back(c); });
  return out;
}

std::uint64_t count_two_chains(int k) {
  const std::vector<Permutation> nc = enumerate_nc(k);
  std::vector<int> len(nc.size());
  for (std::size_t i = 0; i < nc.size(); ++i) len[i] = length(nc[i]);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < nc.size(); ++i) {
    for (std::size_t j = 0; j < nc.size(); ++j) {
      if (len[j] < len[i]) continue;
      if (len[i] + cayley_distance(nc[i], nc[j]) == len[j]) ++count;
    }
  }
  return count;
}

std::uint64_t for_each_pair_with_excess(int k, int excess,
                                        const std::function<void(const Permutation&, const Permutation&)>& visit) {
  if (excess < 0) throw std::invalid_argument("excess must be non-negative");
  const std::vector<Permutation> all = enumerate(k);
  const Permutation gamma = Permutation::canonical_cycle(k);
  std::vector<int> len(all.size());
  std::vector<int> to_gamma(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    len[i] = length(all[i]);
    to_gamma[i] = cayley_distance(all[i], gamma);
  }
  const int target = k - 1 + excess;
  std::uint64_t count = 0;
  for (std::size_t s = 0; s < all.size(); ++s) {
    if (to_gamma[s] > target) continue;
    for (std::size_t p = 0; p < all.size(); ++p) {
      const int partial = len[p] + to_gamma[s];
      // dist(pi, sigma) >= |len(pi) - len(sigma)|
      if (partial + std::abs(len[p] - len[s]) > target) continue;
      if (partial + cayley_distance(all[p], all[s]) != target) continue;
      ++count;
      visit(all[p], all[s]);
    }
  }
  return count;
}

std::vector<std::pair<Permutation, Permutation>> enumerate_genus_one_pairs(int k) {
  if (k > 7) {
    throw ResourceError("materializing genus-one pairs for k = " + std::to_string(k) +
                        " exceeds the cap k <= 7; use count_genus_one_pairs");
  }
  std::vector<std::pair<Permutation, Permutation>> out;
  for_each_pair_with_excess(k, 2, [&](const Permutation& p, const Permutation& s) { out.emplace_back(p, s); });
  return out;
}

std::uint64_t count_genus_one_pairs(int k) {
  return for_each_pair_with_excess(k, 2, [](const Permutation&, const Permutation&) {});
}

void write_count_csv(std::ostream& os, const std::vector<CountRow>& rows, bool with_timing) {
  os << (with_timing ? "k,m,family,count,wall_ms\n" : "k,m,family,count\n");
  for (const auto& r : rows) {
    os << r.k << ',' << r.m << ',' << r.family << ',' << r.count;
    if (with_timing) os << ',' << r.wall_ms;
    os << '\n';
  }
}

}  // namespace rmpu
