#pragma once

// Gram and Weingarten matrices of S_k acting on (C^D)^{(x)k}.
//
// Both are class functions of pi^{-1} sigma, so a table stores one value per
// conjugacy class and materializes the k! x k! matrix only on request.
// Scalar is Rational (exact) or double.

#include "rmpu/numeric.hpp"
#include "rmpu/symgroup.hpp"

#include <memory>
#include <vector>

namespace rmpu {

/// Largest k for Gram/Weingarten class tables.
inline constexpr int kWeingartenCap = 8;
/// Largest k for which the dense k! x k! matrix may be materialized.
inline constexpr int kDenseMatrixCap = 6;
/// Largest replica-space dimension D^k for haar_twirl_exact.
inline constexpr std::int64_t kTwirlDimCap = 1024;

template <typename Scalar>
class ClassFunctionTable {
 public:
  ClassFunctionTable(std::int64_t dim, int k, std::vector<Scalar> class_values)
      : dim_(dim), k_(k), values_(std::move(class_values)) {}

  std::int64_t dim() const { return dim_; }
  int k() const { return k_; }

  /// Value on the conjugacy class c (see ClassIndex).
  const Scalar& class_value(int c) const { return values_[static_cast<std::size_t>(c)]; }
  const std::vector<Scalar>& class_values() const { return values_; }

  Scalar operator()(const Permutation& a, const Permutation& b) const {
    return values_[static_cast<std::size_t>(class_index(k_).of(a.inverse() * b))];
  }

  /// Dense matrix over the lexicographic S_k order; ResourceError for k > kDenseMatrixCap.
  Matrix<Scalar> matrix() const {
    if (k_ > kDenseMatrixCap) {
      throw ResourceError("dense " + std::to_string(k_) + "! matrix exceeds the cap k <= " +
                          std::to_string(kDenseMatrixCap));
    }
    const GroupTable& g = group_table(k_);
    const auto n = static_cast<Eigen::Index>(g.order());
    Matrix<Scalar> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        m(i, j) = values_[static_cast<std::size_t>(
            g.relative_class(static_cast<std::size_t>(i), static_cast<std::size_t>(j)))];
      }
    }
    return m;
  }

 private:
  std::int64_t dim_;
  int k_;
  std::vector<Scalar> values_;
};

template <typename Scalar>
using GramTable = ClassFunctionTable<Scalar>;
template <typename Scalar>
using WeingartenTable = ClassFunctionTable<Scalar>;

/// Entries D^{k - dist(pi, sigma)}. dim >= 1.
template <typename Scalar>
GramTable<Scalar> gram(std::int64_t dim, int k);

/// Inverse of gram(dim, k). Requires dim > k (std::domain_error otherwise).
template <typename Scalar>
WeingartenTable<Scalar> weingarten(std::int64_t dim, int k);

/// Memoized weingarten(); safe under concurrent calls.
template <typename Scalar>
std::shared_ptr<const WeingartenTable<Scalar>> weingarten_cached(std::int64_t dim, int k);

/// Coefficients of the 1/D expansion
///   D^k Wg(sigma) = sum_m W_m(sigma) D^{-m},
/// obtained by inverting e + sum_{j>=1} D^{-j} A_j as a formal power series in the
/// class algebra (A_j = sum of permutations with j transpositions). All W_m are integers.
class WgSeries {
 public:
  WgSeries(int k, int max_order);

  int k() const { return k_; }
  int max_order() const { return static_cast<int>(terms_.size()) - 1; }
  /// W_m on conjugacy class c.
  const BigInt& term(int m, int c) const { return terms_[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)]; }

 private:
  int k_;
  std::vector<std::vector<BigInt>> terms_;
};

/// Shared series up to at least the requested order.
std::shared_ptr<const WgSeries> wg_series(int k, int min_order);

/// Wg^{(g)}(pi, sigma): coefficient of D^{-k-dist(pi,sigma)-2g} in Wg(D). g = 0 gives mu(pi, sigma).
/// g >= 2 throws UnsupportedError.
Rational wg_asymptotic_coeff(const Permutation& pi, const Permutation& sigma, int g);

/// Same, by conjugacy class of pi^{-1} sigma.
BigInt wg_asymptotic_coeff_class(int k, int cls, int g);

/// Basis-index map of the replica operator: T_pi e_x = e_{map[x]}, with
/// T_pi |x_1..x_k> = |x_{pi^{-1}(1)} .. x_{pi^{-1}(k)}>. Site 1 is the most significant digit.
std::vector<std::int64_t> replica_action(const Permutation& pi, std::int64_t dim);

/// Dense T_pi on (C^dim)^{(x)k}.
MatrixXc replica_operator(const Permutation& pi, std::int64_t dim);

/// sum_{pi,sigma} Wg(pi^{-1} sigma) tr[X T_sigma^dagger] T_pi, computed in double precision.
MatrixXc haar_twirl_exact(const MatrixXc& x, std::int64_t dim, int k);

extern template GramTable<Rational> gram<Rational>(std::int64_t, int);
extern template GramTable<double> gram<double>(std::int64_t, int);
extern template WeingartenTable<Rational> weingarten<Rational>(std::int64_t, int);
extern template WeingartenTable<double> weingarten<double>(std::int64_t, int);
extern template std::shared_ptr<const WeingartenTable<Rational>> weingarten_cached<Rational>(std::int64_t, int);
extern template std::shared_ptr<const WeingartenTable<double>> weingarten_cached<double>(std::int64_t, int);

}  // namespace rmpu
