#include "rmpu/predict.hpp"

#include "rmpu/ncposet.hpp"
#include "rmpu/weingarten.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace rmpu {

namespace {

void require_moments(const MomentSequence<auto>& m, int k, const char* name) {
  if (m.order() < k) {
    throw std::invalid_argument(std::string("need ") + std::to_string(k) + " moments of " + name + ", got " +
                                std::to_string(m.order()));
  }
}

template <typename Scalar>
std::vector<Scalar> class_moments(const MomentSequence<Scalar>& m, const ClassIndex& ci) {
  std::vector<Scalar> out;
  for (int c = 0; c < ci.size(); ++c) out.push_back(partitioned_moment(m, ci.type(c)));
  return out;
}

template <typename Scalar>
Scalar mu_scalar(const ClassIndex& ci, int c) {
  return Scalar(static_cast<long long>(mobius_of_type(ci.type(c))));
}

template <typename Scalar>
Matrix<Scalar> class_matrix(const GroupTable& g, const std::vector<Scalar>& values) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Matrix<Scalar> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = values[static_cast<std::size_t>(g.relative_class(static_cast<std::size_t>(i), static_cast<std::size_t>(j)))];
    }
  }
  return m;
}

template <typename Scalar>
std::vector<Scalar> gram_class_values(const ClassIndex& ci, std::int64_t dim) {
  std::vector<Scalar> v;
  for (int c = 0; c < ci.size(); ++c) v.push_back(ipow<Scalar>(dim, ci.cycles(c)));
  return v;
}

void require_dense(int k) {
  if (k > kDenseMatrixCap) {
    throw ResourceError("transfer contraction at k = " + std::to_string(k) + " exceeds the cap k <= " +
                        std::to_string(kDenseMatrixCap));
  }
}

template <typename Scalar>
bool nearly_equal(const Scalar& x, const Scalar& y) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return x == y;
  } else {
    return std::abs(x - y) <= 1e-9 * (1.0 + std::abs(y));
  }
}

}  // namespace

Complex replica_trace(const std::vector<MatrixXc>& ops, const Permutation& pi) {
  if (static_cast<int>(ops.size()) != pi.degree()) throw std::invalid_argument("one operator per replica required");
  Complex value = 1.0;
  for (const auto& cycle : pi.inverse().cycles()) {
    MatrixXc prod = ops[static_cast<std::size_t>(cycle[0])];
    for (std::size_t j = 1; j < cycle.size(); ++j) prod = prod * ops[static_cast<std::size_t>(cycle[j])];
    value *= prod.trace();
  }
  return value;
}

template <typename Scalar>
Scalar haar_otoc_exact(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, std::int64_t dim, int k) {
  if (dim <= k) throw std::domain_error("Haar OTOC needs D > k");
  require_moments(a, k, "A");
  require_moments(b, k, "B");
  const auto wg = weingarten_cached<Scalar>(dim, k);
  const GroupTable& g = group_table(k);
  const ClassIndex& ci = g.classes();
  std::vector<Scalar> aval = class_moments(a, ci);
  std::vector<Scalar> bval = class_moments(b, ci);
  for (int c = 0; c < ci.size(); ++c) {
    const Scalar p = ipow<Scalar>(dim, ci.cycles(c));
    aval[static_cast<std::size_t>(c)] *= p;
    bval[static_cast<std::size_t>(c)] *= p;
  }
  // u(sigma) = sum_pi a(pi) Wg(pi, sigma) is a class function of sigma.
  std::vector<Scalar> u(static_cast<std::size_t>(ci.size()), Scalar(0));
  for (int c = 0; c < ci.size(); ++c) {
    const std::size_t rep = g.index_of(ci.representative(c));
    Scalar s(0);
    for (std::size_t i = 0; i < g.order(); ++i) {
      s += aval[static_cast<std::size_t>(g.class_of(i))] * wg->class_value(g.relative_class(i, rep));
    }
    u[static_cast<std::size_t>(c)] = s;
  }
  Scalar total(0);
  for (std::size_t j = 0; j < g.order(); ++j) {
    total += u[static_cast<std::size_t>(g.class_of(j))] *
             bval[static_cast<std::size_t>(g.class_of(g.kreweras_index(j)))];
  }
  return total / Scalar(static_cast<long long>(dim));
}

Complex haar_multi_otoc_exact(const std::vector<MatrixXc>& a, const std::vector<MatrixXc>& b) {
  const int k = static_cast<int>(a.size());
  if (k < 1 || b.size() != a.size()) throw std::invalid_argument("need k operators for both A and B");
  const auto dim = a[0].rows();
  for (const auto* list : {&a, &b}) {
    for (const auto& m : *list) {
      if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("operators must be square of equal size");
    }
  }
  if (dim <= k) throw std::domain_error("Haar OTOC needs D > k");
  const auto wg = weingarten_cached<double>(dim, k);
  const GroupTable& g = group_table(k);
  const Permutation gamma_inv = Permutation::canonical_cycle(k).inverse();
  std::vector<Complex> av(g.order());
  std::vector<Complex> bv(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    av[i] = replica_trace(a, g.elements()[i].inverse());
    bv[i] = replica_trace(b, gamma_inv * g.elements()[i]);
  }
  Complex total = 0.0;
  for (std::size_t p = 0; p < g.order(); ++p) {
    for (std::size_t s = 0; s < g.order(); ++s) total += wg->class_value(g.relative_class(p, s)) * av[s] * bv[p];
  }
  return total / static_cast<double>(dim);
}

template <typename Scalar>
Scalar rmpu_otoc_exact(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, const RmpuGeometry& geom,
                       int k, int b_site) {
  geom.validate();
  require_moments(a, k, "A");
  require_moments(b, k, "B");
  require_dense(k);
  const std::int64_t chi = geom.chi();
  const std::int64_t q = geom.gate_dim();
  if (q <= k) throw std::domain_error("RMPU OTOC needs chi d > k");
  if (b_site < 0 || b_site > geom.sites()) throw std::invalid_argument("b_site outside 1..N");
  const int layers = b_site == 0 ? geom.n : std::min(b_site, geom.n);

  const GroupTable& g = group_table(k);
  const ClassIndex& ci = g.classes();
  const auto size = static_cast<Eigen::Index>(g.order());
  const Matrix<Scalar> w = weingarten_cached<Scalar>(q, k)->matrix();
  const Matrix<Scalar> kchi = class_matrix(g, gram_class_values<Scalar>(ci, chi));
  const std::vector<Scalar> am = class_moments(a, ci);
  const std::vector<Scalar> bm = class_moments(b, ci);

  Vector<Scalar> av(size), bv(size), dgam(size), dpi(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const int c = g.class_of(ui);
    const int kc = g.class_of(g.kreweras_index(ui));
    av(i) = ipow<Scalar>(q, ci.cycles(c)) * am[static_cast<std::size_t>(c)];
    bv(i) = ipow<Scalar>(q, ci.cycles(kc)) * bm[static_cast<std::size_t>(kc)];
    dgam(i) = ipow<Scalar>(geom.d, ci.cycles(kc));
    dpi(i) = ipow<Scalar>(geom.d, ci.cycles(c));
  }
  Vector<Scalar> v = w * av;
  for (int layer = 2; layer <= layers; ++layer) {
    Vector<Scalar> u = (kchi.transpose() * v.cwiseProduct(dgam)).cwiseProduct(dpi);
    v = w * u;
  }
  const Scalar norm = Scalar(static_cast<long long>(chi)) * ipow<Scalar>(geom.d, layers);
  return v.dot(bv) / norm;
}

template <typename Scalar>
Scalar rmpu_otoc_leading(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int n, int k) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  require_moments(a, k, "A");
  require_moments(b, k, "B");
  const Permutation gamma = Permutation::canonical_cycle(k);
  Scalar total(0);
  for_each_multichain(k, 2 * n, [&](const std::vector<Permutation>& chain) {
    Scalar term = partitioned_moment(a, chain.front()) * partitioned_moment(b, chain.back().inverse() * gamma);
    for (int i = 0; i < n; ++i) {
      term *= Scalar(static_cast<long long>(mobius(chain[static_cast<std::size_t>(2 * i)],
                                                   chain[static_cast<std::size_t>(2 * i + 1)])));
    }
    total += term;
  });
  const Scalar collapsed = free_otoc_prediction(a, b, k);
  if (!nearly_equal(total, collapsed)) {
    throw std::logic_error("multichain sum does not collapse onto the free prediction");
  }
  return collapsed;
}

template <typename Scalar>
Scalar rmpu_otoc_nonlocal_leading(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int n, int k) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  require_moments(a, k, "A");
  require_moments(b, k, "B");
  const Permutation gamma = Permutation::canonical_cycle(k);
  Scalar total(0);
  for_each_multichain(k, 2 * n, [&](const std::vector<Permutation>& chain) {
    Scalar term(1);
    for (int i = 0; i < n; ++i) {
      const Permutation& pi = chain[static_cast<std::size_t>(2 * i)];
      const Permutation& sigma = chain[static_cast<std::size_t>(2 * i + 1)];
      term *= Scalar(static_cast<long long>(mobius(pi, sigma))) * partitioned_moment(a, pi) *
              partitioned_moment(b, sigma.inverse() * gamma);
    }
    total += term;
  });
  return total;
}

template <typename Scalar>
MomentSequence<Scalar> tensor_power_moments(const MomentSequence<Scalar>& m, int n) {
  std::vector<Scalar> out;
  for (const auto& x : m.values()) {
    Scalar p(1);
    for (int i = 0; i < n; ++i) p *= x;
    out.push_back(p);
  }
  return MomentSequence<Scalar>(std::move(out));
}

template <typename Scalar>
Scalar subleading_coeff_haar(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int k) {
  require_moments(a, k, "A");
  require_moments(b, k, "B");
  const Permutation gamma = Permutation::canonical_cycle(k);
  const ClassIndex& ci = class_index(k);
  Scalar total(0);
  for_each_pair_with_excess(k, 0, [&](const Permutation& pi, const Permutation& sigma) {
    const int c = ci.of(pi.inverse() * sigma);
    total += from_integer<Scalar>(wg_asymptotic_coeff_class(k, c, 1)) * partitioned_moment(a, pi) *
             partitioned_moment(b, sigma.inverse() * gamma);
  });
  for_each_pair_with_excess(k, 2, [&](const Permutation& pi, const Permutation& sigma) {
    total += Scalar(static_cast<long long>(mobius(pi, sigma))) * partitioned_moment(a, pi) *
             partitioned_moment(b, sigma.inverse() * gamma);
  });
  return total;
}

template <typename Scalar>
Scalar subleading_coeff_rmpu(const MomentSequence<Scalar>& a, const MomentSequence<Scalar>& b, int n, int d, int k) {
  if (n < 1 || d < 2) throw std::invalid_argument("need n >= 1 and d >= 2");
  require_moments(a, k, "A");
  require_moments(b, k, "B");
  if (k > kPairTableCap) {
    throw ResourceError("broken-chain recursion at k = " + std::to_string(k) + " exceeds the cap k <= " +
                        std::to_string(kPairTableCap));
  }
  const GroupTable& g = group_table(k);
  const ClassIndex& ci = g.classes();
  const std::size_t size = g.order();
  const std::vector<Scalar> am = class_moments(a, ci);
  const std::vector<Scalar> bm = class_moments(b, ci);

  std::vector<Scalar> mu;
  std::vector<Scalar> wg1;
  for (int c = 0; c < ci.size(); ++c) {
    mu.push_back(mu_scalar<Scalar>(ci, c));
    wg1.push_back(from_integer<Scalar>(wg_asymptotic_coeff_class(k, c, 1)));
  }
  std::vector<int> len(size), to_gamma(size);
  for (std::size_t i = 0; i < size; ++i) {
    len[i] = k - ci.cycles(g.class_of(i));
    to_gamma[i] = k - ci.cycles(g.class_of(g.kreweras_index(i)));
  }
  std::vector<Scalar> inv_d_pow;
  for (int e = 0; e <= 2 * k + 2; ++e) inv_d_pow.push_back(ipow<Scalar>(d, -e));

  // Unbroken part: n copies of the Wg^(1) insertion, each carrying 1/d^2 from (chi d)^{-2}.
  Scalar unbroken(0);
  for (std::size_t p = 0; p < size; ++p) {
    for (std::size_t s = 0; s < size; ++s) {
      if (len[p] + g.distance(p, s) + to_gamma[s] != k - 1) continue;
      unbroken += wg1[static_cast<std::size_t>(g.relative_class(p, s))] * am[static_cast<std::size_t>(g.class_of(p))] *
                  bm[static_cast<std::size_t>(g.class_of(g.kreweras_index(s)))];
    }
  }
  unbroken *= Scalar(n) * inv_d_pow[2];

  // Broken part: states (permutation, excess of the path from e) with excess <= 2.
  using Layer = std::array<std::vector<Scalar>, 3>;
  Layer state;
  for (auto& v : state) v.assign(size, Scalar(0));
  for (std::size_t i = 0; i < size; ++i) state[0][i] = am[static_cast<std::size_t>(g.class_of(i))];

  Layer after_gate;
  for (int gate = 1; gate <= n; ++gate) {
    for (auto& v : after_gate) v.assign(size, Scalar(0));
    for (int ex = 0; ex <= 2; ++ex) {
      for (std::size_t p = 0; p < size; ++p) {
        const Scalar& x = state[static_cast<std::size_t>(ex)][p];
        if (x == 0) continue;
        for (std::size_t s = 0; s < size; ++s) {
          const int dist = g.distance(p, s);
          const int ex2 = ex + len[p] + dist - len[s];
          if (ex2 > 2) continue;
          const int bracket = len[p] + dist + to_gamma[s] - (k - 1);
          after_gate[static_cast<std::size_t>(ex2)][s] +=
              x * mu[static_cast<std::size_t>(g.relative_class(p, s))] * inv_d_pow[static_cast<std::size_t>(bracket)];
        }
      }
    }
    if (gate == n) break;
    for (auto& v : state) v.assign(size, Scalar(0));
    for (int ex = 0; ex <= 2; ++ex) {
      for (std::size_t s = 0; s < size; ++s) {
        const Scalar& x = after_gate[static_cast<std::size_t>(ex)][s];
        if (x == 0) continue;
        for (std::size_t p = 0; p < size; ++p) {
          const int ex2 = ex + len[s] + g.distance(s, p) - len[p];
          if (ex2 > 2) continue;
          state[static_cast<std::size_t>(ex2)][p] += x;
        }
      }
    }
  }
  Scalar broken(0);
  for (int ex = 0; ex <= 2; ++ex) {
    for (std::size_t s = 0; s < size; ++s) {
      if (ex + len[s] + to_gamma[s] - (k - 1) != 2) continue;
      broken += after_gate[static_cast<std::size_t>(ex)][s] * bm[static_cast<std::size_t>(g.class_of(g.kreweras_index(s)))];
    }
  }
  return unbroken + broken;
}

template <typename Scalar>
Scalar closed_form_c(const CumulantSequence<Scalar>& ka, const CumulantSequence<Scalar>& kb, int k) {
  if (k < 1 || k > 4) throw UnsupportedError("closed forms exist for k <= 4 only");
  if (ka.order() < k || kb.order() < k) throw std::invalid_argument("insufficient cumulants");
  const auto split = closed_form_rmpu_split(ka, kb, k);
  if (k <= 2) return split.a + split.b;
  auto A = [&](int j) { return ka[j]; };
  auto B = [&](int j) { return kb[j]; };
  if (k == 3) {
    return A(3) * (Scalar(-3) * B(1) * B(2) + B(3)) - Scalar(3) * A(1) * A(2) * (Scalar(2) * B(1) * B(2) + B(3));
  }
  return A(4) * (Scalar(-6) * B(1) * B(1) * B(2) + B(2) * B(2) + Scalar(4) * B(1) * B(3)) +
         A(2) * A(2) * (Scalar(-10) * B(1) * B(1) * B(2) + B(4)) +
         Scalar(4) * A(1) * A(3) * (Scalar(-5) * B(1) * B(1) * B(2) + B(4)) -
         Scalar(2) * A(1) * A(1) * A(2) *
             (Scalar(5) * (Scalar(2) * B(1) * B(1) * B(2) + B(2) * B(2) + Scalar(2) * B(1) * B(3)) + Scalar(3) * B(4));
}

template <typename Scalar>
RmpuSplit<Scalar> closed_form_rmpu_split(const CumulantSequence<Scalar>& ka, const CumulantSequence<Scalar>& kb, int k) {
  if (k < 1 || k > 4) throw UnsupportedError("closed forms exist for k <= 4 only");
  if (ka.order() < k || kb.order() < k) throw std::invalid_argument("insufficient cumulants");
  auto A = [&](int j) { return ka[j]; };
  auto B = [&](int j) { return kb[j]; };
  switch (k) {
    case 1:
      return {Scalar(0), Scalar(0)};
    case 2:
      return {-(A(2) * B(2)), Scalar(0)};
    case 3:
      return {-(Scalar(3) * A(1) * A(2) * (Scalar(2) * B(1) * B(2) + B(3)) + Scalar(3) * A(3) * B(1) * B(2)),
              A(3) * B(3)};
    default: {
      const Scalar a = Scalar(6) * A(4) * B(1) * B(1) * B(2) +
                       Scalar(2) * A(2) * A(2) * B(1) * (Scalar(5) * B(1) * B(2) + Scalar(2) * B(3)) +
                       Scalar(4) * A(1) * A(3) * (B(2) * (Scalar(5) * B(1) * B(1) + B(2)) + Scalar(2) * B(1) * B(3)) +
                       Scalar(2) * A(1) * A(1) * A(2) *
                           (Scalar(10) * B(1) * B(1) * B(2) + Scalar(5) * B(2) * B(2) + Scalar(10) * B(1) * B(3) +
                            Scalar(3) * B(4));
      const Scalar b = A(4) * (B(2) * B(2) + Scalar(4) * B(1) * B(3)) +
                       Scalar(4) * A(1) * A(3) * (B(2) * B(2) + Scalar(2) * B(1) * B(3) + B(4)) +
                       A(2) * A(2) * (Scalar(4) * B(1) * B(3) + B(4));
      return {-a, b};
    }
  }
}

template <typename Scalar>
Scalar closed_form_c_tilde(const CumulantSequence<Scalar>& ka, const CumulantSequence<Scalar>& kb, int k, int n, int d) {
  const auto split = closed_form_rmpu_split(ka, kb, k);
  const Scalar prefactor = Scalar(n) * ipow<Scalar>(d, -2) - Scalar(n - 1);
  return prefactor * split.a + split.b * ipow<Scalar>(d, -2 * n);
}

BigInt frame_potential_haar(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

template <typename Scalar>
Scalar frame_potential_rmpu_exact(const RmpuGeometry& geom, int k) {
  geom.validate();
  if (geom.variant != RmpuGeometry::Variant::staircase) {
    throw UnsupportedError("exact frame potential is implemented for the staircase geometry only");
  }
  require_dense(k);
  const std::int64_t chi = geom.chi();
  const std::int64_t q = geom.gate_dim();
  if (q <= k) throw std::domain_error("frame potential needs chi d > k");
  const GroupTable& g = group_table(k);
  const ClassIndex& ci = g.classes();
  const Matrix<Scalar> w = weingarten_cached<Scalar>(q, k)->matrix();
  const Matrix<Scalar> gd = class_matrix(g, gram_class_values<Scalar>(ci, geom.d));
  const Matrix<Scalar> gchi = class_matrix(g, gram_class_values<Scalar>(ci, chi));
  Matrix<Scalar> m = gchi.cwiseProduct(gd);
  Matrix<Scalar> out;
  for (int gate = 1; gate <= geom.n; ++gate) {
    out = (w.transpose() * m * w).cwiseProduct(gd);
    if (gate < geom.n) m = (gchi.transpose() * out * gchi).cwiseProduct(gd);
  }
  return out.cwiseProduct(gchi).sum();
}

template <typename Scalar>
Scalar frame_potential_rmpu_asymptotic(const RmpuGeometry& geom, int k) {
  geom.validate();
  const Scalar kf = from_integer<Scalar>(frame_potential_haar(k));
  const Scalar chi = Scalar(static_cast<long long>(geom.chi()));
  const Scalar bracket = Scalar(geom.n - 1) - Scalar(geom.n) * ipow<Scalar>(geom.d, -2) + ipow<Scalar>(geom.d, -2 * geom.n);
  return kf * (Scalar(1) + Scalar(k * (k - 1)) / (Scalar(2) * chi * chi) * bracket);
}

std::vector<MatrixXc> pauli_strings(int qubits) {
  if (qubits < 1 || qubits > 4) throw ResourceError("Pauli enumeration supports 1..4 qubits");
  const Complex i(0.0, 1.0);
  std::array<Eigen::Matrix2cd, 4> single;
  single[0] << 1, 0, 0, 1;
  single[1] << 0, 1, 1, 0;
  single[2] << 0, -i, i, 0;
  single[3] << 1, 0, 0, -1;
  std::vector<MatrixXc> out;
  const int count = 1 << (2 * qubits);
  for (int code = 0; code < count; ++code) {
    MatrixXc p = MatrixXc::Ones(1, 1);
    for (int site = 0; site < qubits; ++site) {
      const int letter = (code >> (2 * (qubits - 1 - site))) & 3;
      const MatrixXc& s = single[static_cast<std::size_t>(letter)];
      MatrixXc next(p.rows() * 2, p.cols() * 2);
      for (Eigen::Index r = 0; r < p.rows(); ++r) {
        for (Eigen::Index c = 0; c < p.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = p(r, c) * s;
      }
      p = std::move(next);
    }
    out.push_back(std::move(p));
  }
  return out;
}

IdentityReport verify_frame_otoc_identity(std::int64_t dim, int k, double frame_value, double tolerance) {
  int qubits = 0;
  while ((std::int64_t{1} << qubits) < dim) ++qubits;
  if ((std::int64_t{1} << qubits) != dim) throw std::invalid_argument("Pauli check needs D = 2^q");
  if (dim <= k) throw std::domain_error("identity check needs D > k");
  const std::vector<MatrixXc> paulis = pauli_strings(qubits);
  const std::size_t np = paulis.size();
  std::size_t tuples = 1;
  for (int i = 0; i < k; ++i) {
    tuples *= np;
    if (tuples > 65536) throw ResourceError("Pauli tuple count exceeds 65536 per side");
  }
  const GroupTable& g = group_table(k);
  const auto wg = weingarten_cached<double>(dim, k);
  const Matrix<double> w = wg->matrix();
  const Permutation gamma_inv = Permutation::canonical_cycle(k).inverse();
  const auto ns = static_cast<Eigen::Index>(g.order());

  // Rows: Pauli tuples. Columns: permutations.
  MatrixXc av(static_cast<Eigen::Index>(tuples), ns);
  MatrixXc bv(static_cast<Eigen::Index>(tuples), ns);
  std::vector<MatrixXc> ops(static_cast<std::size_t>(k));
  for (std::size_t t = 0; t < tuples; ++t) {
    std::size_t rest = t;
    for (int i = k - 1; i >= 0; --i) {
      ops[static_cast<std::size_t>(i)] = paulis[rest % np];
      rest /= np;
    }
    for (Eigen::Index s = 0; s < ns; ++s) {
      const Permutation& p = g.elements()[static_cast<std::size_t>(s)];
      av(static_cast<Eigen::Index>(t), s) = replica_trace(ops, p.inverse());
      bv(static_cast<Eigen::Index>(t), s) = replica_trace(ops, gamma_inv * p);
    }
  }
  // C(tA, tB) = (1/D) sum_{pi,sigma} Wg(pi,sigma) av(tA, sigma) bv(tB, pi)
  const MatrixXc c = (av * w.cast<Complex>() * bv.transpose()) / static_cast<double>(dim);
  const double scale = std::pow(static_cast<double>(dim), 2 * k);
  IdentityReport report;
  report.dim = dim;
  report.k = k;
  report.terms = tuples * tuples;
  report.lhs = (c / scale).cwiseAbs2().sum();
  const double f = frame_value >= 0.0 ? frame_value : frame_potential_haar(k).convert_to<double>();
  report.rhs = f / std::pow(static_cast<double>(dim), 2 * (k + 1));
  report.relative_error = std::abs(report.lhs - report.rhs) / std::abs(report.rhs);
  report.passed = report.relative_error <= tolerance;
  return report;
}

void write_prediction_csv(std::ostream& os, const std::vector<PredictionRow>& rows) {
  os << "quantity,k,d,r,n,chi,D,value,order_tag,residual_estimate\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.quantity << ',' << r.k << ',' << r.d << ',' << r.r << ',' << r.n << ',' << r.chi << ',' << r.dim << ','
       << r.value << ',' << r.order_tag << ',' << r.residual_estimate << '\n';
  }
}

#define RMPU_PREDICT_INSTANTIATE(S)                                                                              \
  template S haar_otoc_exact<S>(const MomentSequence<S>&, const MomentSequence<S>&, std::int64_t, int);         \
  template S rmpu_otoc_exact<S>(const MomentSequence<S>&, const MomentSequence<S>&, const RmpuGeometry&, int,   \
                                int);                                                                          \
  template S rmpu_otoc_leading<S>(const MomentSequence<S>&, const MomentSequence<S>&, int, int);                \
  template S rmpu_otoc_nonlocal_leading<S>(const MomentSequence<S>&, const MomentSequence<S>&, int, int);       \
  template MomentSequence<S> tensor_power_moments<S>(const MomentSequence<S>&, int);                            \
  template S subleading_coeff_haar<S>(const MomentSequence<S>&, const MomentSequence<S>&, int);                 \
  template S subleading_coeff_rmpu<S>(const MomentSequence<S>&, const MomentSequence<S>&, int, int, int);       \
  template S closed_form_c<S>(const CumulantSequence<S>&, const CumulantSequence<S>&, int);                     \
  template RmpuSplit<S> closed_form_rmpu_split<S>(const CumulantSequence<S>&, const CumulantSequence<S>&, int); \
  template S closed_form_c_tilde<S>(const CumulantSequence<S>&, const CumulantSequence<S>&, int, int, int);     \
  template S frame_potential_rmpu_exact<S>(const RmpuGeometry&, int);                                           \
  template S frame_potential_rmpu_asymptotic<S>(const RmpuGeometry&, int);
RMPU_PREDICT_INSTANTIATE(Rational)
RMPU_PREDICT_INSTANTIATE(double)

}  // namespace rmpu
