#pragma once

// Partitioned moments, free cumulants and the free-independence mixed moment.

#include "rmpu/numeric.hpp"
#include "rmpu/symgroup.hpp"

#include <initializer_list>
#include <vector>

namespace rmpu {

/// Normalized moments m_1..m_K, m_j = tr[A^j] / D. Indexing is 1-based.
template <typename Scalar>
class MomentSequence {
 public:
  MomentSequence() = default;
  explicit MomentSequence(std::vector<Scalar> moments) : m_(std::move(moments)) {}
  MomentSequence(std::initializer_list<Scalar> moments) : m_(moments) {}

  int order() const { return static_cast<int>(m_.size()); }
  const Scalar& operator[](int j) const { return m_[static_cast<std::size_t>(j - 1)]; }
  Scalar& operator[](int j) { return m_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<Scalar>& values() const { return m_; }

  friend bool operator==(const MomentSequence&, const MomentSequence&) = default;

 private:
  std::vector<Scalar> m_;
};

/// Free cumulants kappa_1..kappa_K, 1-based.
template <typename Scalar>
class CumulantSequence {
 public:
  CumulantSequence() = default;
  explicit CumulantSequence(std::vector<Scalar> kappas) : k_(std::move(kappas)) {}
  CumulantSequence(std::initializer_list<Scalar> kappas) : k_(kappas) {}

  int order() const { return static_cast<int>(k_.size()); }
  const Scalar& operator[](int j) const { return k_[static_cast<std::size_t>(j - 1)]; }
  Scalar& operator[](int j) { return k_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<Scalar>& values() const { return k_; }

  friend bool operator==(const CumulantSequence&, const CumulantSequence&) = default;

 private:
  std::vector<Scalar> k_;
};

/// Moments of a Hermitian matrix, m_j = tr[A^j] / dim, j = 1..order.
MomentSequence<double> moments_of(const MatrixXc& a, int order);

/// prod over cycles c of p of m_{|c|}. Throws std::invalid_argument if a cycle is
/// longer than the available moments.
template <typename Scalar>
Scalar partitioned_moment(const MomentSequence<Scalar>& m, const Permutation& p);

/// Same, from a cycle type.
template <typename Scalar>
Scalar partitioned_moment(const MomentSequence<Scalar>& m, const std::vector<int>& cycle_type);

/// kappa_k = sum_{s in NC(k)} m_s mu(s, gamma_k).
template <typename Scalar>
CumulantSequence<Scalar> cumulants_from_moments(const MomentSequence<Scalar>& m);

/// m_k = sum_{p in NC(k)} prod_{cycles c} kappa_{|c|}.
template <typename Scalar>
MomentSequence<Scalar> moments_from_cumulants(const CumulantSequence<Scalar>& c);

/// C_FP = sum_{pi <= sigma <= gamma} mu(pi, sigma) <A>_pi <B>_{sigma^{-1} gamma}.
template <typename Scalar>
Scalar free_otoc_prediction(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int k);

#define RMPU_FREEPROB_EXTERN(S)                                                                   \
  extern template S partitioned_moment<S>(const MomentSequence<S>&, const Permutation&);         \
  extern template S partitioned_moment<S>(const MomentSequence<S>&, const std::vector<int>&);    \
  extern template CumulantSequence<S> cumulants_from_moments<S>(const MomentSequence<S>&);       \
  extern template MomentSequence<S> moments_from_cumulants<S>(const CumulantSequence<S>&);       \
  extern template S free_otoc_prediction<S>(const MomentSequence<S>&, const MomentSequence<S>&, int);
RMPU_FREEPROB_EXTERN(Rational)
RMPU_FREEPROB_EXTERN(double)
#undef RMPU_FREEPROB_EXTERN

}  // namespace rmpu
