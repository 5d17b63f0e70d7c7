#include "rmpu/freeprob.hpp"

#include "rmpu/ncposet.hpp"

#include <stdexcept>

namespace rmpu {

MomentSequence<double> moments_of(const MatrixXc& a, int order) {
  if (a.rows() != a.cols()) throw std::invalid_argument("moments need a square matrix");
  std::vector<double> m;
  MatrixXc power = MatrixXc::Identity(a.rows(), a.cols());
  for (int j = 1; j <= order; ++j) {
    power = power * a;
    m.push_back(power.trace().real() / static_cast<double>(a.rows()));
  }
  return MomentSequence<double>(std::move(m));
}

template <typename Scalar>
Scalar partitioned_moment(const MomentSequence<Scalar>& m, const std::vector<int>& cycle_type) {
  Scalar value(1);
  for (int len : cycle_type) {
    if (len > m.order()) {
      throw std::invalid_argument("cycle of length " + std::to_string(len) + " needs moment m_" +
                                  std::to_string(len) + ", only " + std::to_string(m.order()) + " available");
    }
    value *= m[len];
  }
  return value;
}

template <typename Scalar>
Scalar partitioned_moment(const MomentSequence<Scalar>& m, const Permutation& p) {
  return partitioned_moment(m, p.cycle_type());
}

template <typename Scalar>
CumulantSequence<Scalar> cumulants_from_moments(const MomentSequence<Scalar>& m) {
  std::vector<Scalar> kappas;
  for (int k = 1; k <= m.order(); ++k) {
    const Permutation gamma = Permutation::canonical_cycle(k);
    Scalar kappa(0);
    for (const auto& s : enumerate_nc(k)) {
      kappa += partitioned_moment(m, s) * Scalar(static_cast<long long>(mobius(s, gamma)));
    }
    kappas.push_back(kappa);
  }
  return CumulantSequence<Scalar>(std::move(kappas));
}

template <typename Scalar>
MomentSequence<Scalar> moments_from_cumulants(const CumulantSequence<Scalar>& c) {
  std::vector<Scalar> moments;
  for (int k = 1; k <= c.order(); ++k) {
    Scalar mk(0);
    for (const auto& p : enumerate_nc(k)) {
      Scalar term(1);
      for (int len : p.cycle_type()) term *= c[len];
      mk += term;
    }
    moments.push_back(mk);
  }
  return MomentSequence<Scalar>(std::move(moments));
}

template <typename Scalar>
Scalar free_otoc_prediction(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (a.order() < k || b.order() < k) {
    throw std::invalid_argument("free OTOC prediction at k = " + std::to_string(k) + " needs k moments of A and B");
  }
  const Permutation gamma = Permutation::canonical_cycle(k);
  Scalar total(0);
  for_each_multichain(k, 2, [&](const std::vector<Permutation>& chain) {
    const Permutation& pi = chain[0];
    const Permutation& sigma = chain[1];
    total += Scalar(static_cast<long long>(mobius(pi, sigma))) * partitioned_moment(a, pi) *
             partitioned_moment(b, sigma.inverse() * gamma);
  });
  return total;
}

#define RMPU_FREEPROB_INSTANTIATE(S)                                                       \
  template S partitioned_moment<S>(const MomentSequence<S>&, const Permutation&);         \
  template S partitioned_moment<S>(const MomentSequence<S>&, const std::vector<int>&);    \
  template CumulantSequence<S> cumulants_from_moments<S>(const MomentSequence<S>&);       \
  template MomentSequence<S> moments_from_cumulants<S>(const CumulantSequence<S>&);       \
  template S free_otoc_prediction<S>(const MomentSequence<S>&, const MomentSequence<S>&, int);
RMPU_FREEPROB_INSTANTIATE(Rational)
RMPU_FREEPROB_INSTANTIATE(double)

}  // namespace rmpu
