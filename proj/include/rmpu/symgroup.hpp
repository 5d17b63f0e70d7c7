#pragma once

// Symmetric group S_k: permutations stored as image words.
//
// Positions are 0-based internally; the cycle-notation parser and printer use
// 1-based labels, e.g. "(123)(4)". Composition follows (a*b)(i) = a(b(i)).

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rmpu {

class Permutation {
 public:
  static constexpr int kMaxDegree = 12;

  Permutation() = default;

  /// Builds from 0-based images; throws std::invalid_argument unless bijective.
  explicit Permutation(std::span<const int> images);
  Permutation(std::initializer_list<int> images)
      : Permutation(std::span<const int>(images.begin(), images.size())) {}

  static Permutation identity(int k);
  /// The canonical k-cycle gamma = (1 2 ... k).
  static Permutation canonical_cycle(int k);
  /// Builds from 1-based images, matching the textbook one-line notation.
  static Permutation from_one_based(std::span<const int> images);

  int degree() const { return degree_; }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }

  Permutation inverse() const;
  bool is_identity() const;

  /// Cycles with 0-based entries, each starting at its smallest element,
  /// ordered by that element. Fixed points are included.
  std::vector<std::vector<int>> cycles() const;
  /// Cycle lengths sorted in non-increasing order (an integer partition of k).
  std::vector<int> cycle_type() const;

  std::vector<int> images() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.degree_ == b.degree_ && a.images_ == b.images_;
  }
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.images_ <=> b.images_;
  }

 private:
  std::array<std::uint8_t, kMaxDegree> images_{};
  int degree_ = 0;
};

/// (a*b)(i) = a(b(i)). Throws std::invalid_argument on degree mismatch.
Permutation compose(const Permutation& a, const Permutation& b);
inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

int num_cycles(const Permutation& p);

/// k - #(a^{-1} b): the minimal number of transpositions taking a to b.
int cayley_distance(const Permutation& a, const Permutation& b);

/// Shorthand for cayley_distance(e, p).
int length(const Permutation& p);

/// 1 iff cayley_distance(a, b) == alpha.
int adjacency_indicator(const Permutation& a, const Permutation& b, int alpha);

/// Largest k for which full enumeration of S_k is permitted.
inline constexpr int kEnumerationCap = 8;
/// Largest k accepted by streaming (counting-only) routines.
inline constexpr int kCountingCap = 10;

std::uint64_t factorial(int k);

/// All of S_k in lexicographic order of image words. Throws ResourceError if k > kEnumerationCap.
std::vector<Permutation> enumerate(int k);

/// Calls visit(p) for every p in S_k in lexicographic order without materializing the list.
void for_each_permutation(int k, const std::function<void(const Permutation&)>& visit);

/// Position of p in the lexicographic order (Lehmer code).
std::uint64_t rank(const Permutation& p);
Permutation unrank(std::uint64_t index, int k);

/// Parses cycle notation with 1-based labels: "(123)(4)", "(1 2)(3)", "()" or "e".
/// Labels above 9 need whitespace or commas as separators, e.g. "(1,10)".
/// Unlisted points are fixed. Throws std::invalid_argument on malformed input.
Permutation parse_cycles(std::string_view text, int k);

/// Cycle notation including fixed points, e.g. "(123)(4)". Labels > 9 are comma separated.
std::string to_cycle_string(const Permutation& p);

std::ostream& operator<<(std::ostream& os, const Permutation& p);

}  // namespace rmpu

template <>
struct std::hash<rmpu::Permutation> {
  std::size_t operator()(const rmpu::Permutation& p) const noexcept;
};

namespace rmpu {

/// Packs the cycle type into 4-bit multiplicity fields, one per cycle length.
std::uint64_t cycle_type_key(const Permutation& p);

/// Integer partitions of k (non-increasing parts), in reverse lexicographic order:
/// {k}, {k-1,1}, ..., {1,...,1}.
std::vector<std::vector<int>> integer_partitions(int k);

/// A permutation with the given cycle type whose cycles are consecutive runs.
Permutation class_representative(const std::vector<int>& cycle_type);

/// Conjugacy classes of S_k indexed by integer partition.
class ClassIndex {
 public:
  explicit ClassIndex(int k);

  int degree() const { return k_; }
  int size() const { return static_cast<int>(types_.size()); }
  int of(const Permutation& p) const;
  const std::vector<int>& type(int c) const { return types_[static_cast<std::size_t>(c)]; }
  const Permutation& representative(int c) const { return reps_[static_cast<std::size_t>(c)]; }
  std::uint64_t class_size(int c) const { return sizes_[static_cast<std::size_t>(c)]; }
  int cycles(int c) const { return static_cast<int>(types_[static_cast<std::size_t>(c)].size()); }
  int identity_class() const { return size() - 1; }

 private:
  int k_;
  std::vector<std::vector<int>> types_;
  std::vector<Permutation> reps_;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::pair<std::uint64_t, int>> keys_;  // sorted by key
};

/// Shared per-k class index; thread-safe lazy construction.
const ClassIndex& class_index(int k);

/// Enumerated S_k together with per-element class and the pair table
/// cls(pi_i^{-1} pi_j). Built lazily and shared; k <= kPairTableCap.
inline constexpr int kPairTableCap = 7;

class GroupTable {
 public:
  explicit GroupTable(int k);

  int degree() const { return k_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const ClassIndex& classes() const { return *classes_; }
  int class_of(std::size_t i) const { return element_class_[i]; }
  /// Class of elements[i]^{-1} * elements[j].
  int relative_class(std::size_t i, std::size_t j) const {
    return pair_class_[i * order() + j];
  }
  int distance(std::size_t i, std::size_t j) const {
    return k_ - classes_->cycles(relative_class(i, j));
  }
  /// Index of elements[i]^{-1} * gamma.
  std::size_t kreweras_index(std::size_t i) const { return kreweras_[i]; }
  std::size_t index_of(const Permutation& p) const { return static_cast<std::size_t>(rank(p)); }

 private:
  int k_;
  const ClassIndex* classes_;
  std::vector<Permutation> elements_;
  std::vector<int> element_class_;
  std::vector<std::uint8_t> pair_class_;
  std::vector<std::size_t> kreweras_;
};

const GroupTable& group_table(int k);

}  // namespace rmpu
