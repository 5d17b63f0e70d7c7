// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include "oracles.hpp"
#include "rmpu/fit.hpp"
#include "rmpu/freeprob.hpp"
#include "rmpu/mcsim.hpp"
#include "rmpu/ncposet.hpp"
#include "rmpu/predict.hpp"
#include "rmpu/weingarten.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

using namespace rmpu;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << "[failed: " << what << "] ";
    }
  }
};

MomentSequence<Rational> random_moments(std::uint64_t& state, int k) {
  std::vector<Rational> v;
  for (int j = 0; j < k; ++j) v.push_back(oracle::random_rational(state, 9));
  return MomentSequence<Rational>(v);
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

void ac1(Outcome& o) {
  for (int k = 2; k <= 5; ++k) {
    for (std::int64_t dim : {std::int64_t{k + 1}, std::int64_t{2 * k}, std::int64_t{10}}) {
      const Matrix<Rational> g = oracle::gram_matrix(dim, k);
      const Matrix<Rational> w = weingarten<Rational>(dim, k).matrix();
      const Matrix<Rational> prod = w * g;
      bool identity = true;
      for (Eigen::Index i = 0; i < prod.rows(); ++i) {
        for (Eigen::Index j = 0; j < prod.cols(); ++j) identity = identity && prod(i, j) == Rational(i == j ? 1 : 0);
      }
      o.require(identity, "k=" + std::to_string(k) + " D=" + std::to_string(dim));
    }
  }
  o.note << "12 (k, D) pairs, zero residual";
}

void ac2(Outcome& o) {
  for (int k = 1; k <= 10; ++k) {
    o.require(BigInt(count_two_chains(k)) == fuss_catalan(k, 2), "fuss-catalan k=" + std::to_string(k));
  }
  const std::uint64_t expected[] = {1, 21, 270, 2860, 27300};
  for (int k = 2; k <= 6; ++k) {
    const auto pairs = enumerate_genus_one_pairs(k);
    std::uint64_t brute = 0;
    for (const auto& [s, t] : pairs) {
      // geodesic defect of e -> s -> t -> gamma is exactly 2
      const int excess = length(s) + cayley_distance(s, t) + cayley_distance(t, Permutation::canonical_cycle(k)) - (k - 1);
      brute += excess == 2 ? 1 : 0;
    }
    o.require(brute == pairs.size() && brute == expected[k - 2], "genus-one k=" + std::to_string(k));
  }
  o.note << "k<=10 genus zero, k=2..6 genus one";
}

void ac3(Outcome& o) {
  for (int k = 1; k <= 6; ++k) {
    const auto nc = oracle::nc_by_crossing(k);
    const auto mu = oracle::mobius_by_recursion(k);
    const Permutation gamma = Permutation::canonical_cycle(k);
    const std::int64_t cat = static_cast<std::int64_t>(catalan(k - 1));
    o.require(mobius(gamma) == ((k - 1) % 2 ? -cat : cat), "mu(gamma) k=" + std::to_string(k));
    for (const auto& a : nc) {
      o.require(mobius(a, a) == 1, "mu(pi,pi)");
      std::int64_t product = 1;
      for (const auto& block : oracle::blocks(a)) {
        const auto c = static_cast<std::int64_t>(catalan(static_cast<int>(block.size()) - 1));
        product *= (block.size() - 1) % 2 ? -c : c;
      }
      o.require(mobius(a) == product, "factorization");
      for (const auto& b : nc) {
        if (!oracle::refines(a, b)) continue;
        o.require(mobius(a, b) == mu.at({a, b}), "recursion");
        std::int64_t sum = 0;
        for (const auto& s : nc) {
          if (oracle::refines(a, s) && oracle::refines(s, b)) sum += mobius(a, s);
        }
        o.require(sum == (a == b ? 1 : 0), "delta identity");
      }
    }
  }
  for (int k = 1; k <= 8; ++k) {
    for (const auto& s : enumerate_nc(k)) o.require(num_cycles(s) + num_cycles(kreweras(s)) == k + 1, "kreweras");
  }
  o.note << "k<=6 exhaustive, kreweras k<=8";
}

void ac4(Outcome& o) {
  std::uint64_t state = 2024;
  for (int order = 1; order <= 8; ++order) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = random_moments(state, order);
      o.require(moments_from_cumulants(cumulants_from_moments(m)) == m, "moment round trip");
      std::vector<Rational> kv;
      for (int j = 0; j < order; ++j) kv.push_back(oracle::random_rational(state, 9));
      const CumulantSequence<Rational> c(kv);
      o.require(cumulants_from_moments(moments_from_cumulants(c)) == c, "cumulant round trip");
    }
  }
  const auto semi = moments_from_cumulants(CumulantSequence<Rational>{0, 1, 0, 0, 0, 0});
  o.require(semi[2] == 1 && semi[4] == 2 && semi[6] == 5 && semi[1] == 0 && semi[3] == 0 && semi[5] == 0, "semicircle");
  o.note << "160 sequences each way, semicircle 1,2,5";
}

void ac5(Outcome& o) {
  double worst = 0.0;
  for (int k = 2; k <= 3; ++k) {
    for (std::uint64_t draw = 0; draw < 5; ++draw) {
      const auto cfg = EnsembleConfig::global_haar(8, 100 + draw, 10000);
      const auto a = make_observable(ObservableKind::random_hermitian, {.seed = 10 + draw, .stream = 1}, 1, 1, 8);
      const auto b = make_observable(ObservableKind::random_hermitian, {.seed = 10 + draw, .stream = 2}, 1, 1, 8);
      const auto rec = mc_otoc(cfg, a, b, k);
      const double exact = haar_otoc_exact(moments_of(a.matrix, k), moments_of(b.matrix, k), 8, k);
      const double z = std::abs(rec.mean - exact) / rec.stderr_;
      worst = std::max(worst, z);
      o.require(z <= 4.0, "k=" + std::to_string(k) + " draw " + std::to_string(draw));
    }
  }
  o.note << "max |z| = " << worst;
}

const MomentSequence<Rational> kA{Rational(1, 3), Rational(1, 2), Rational(-1, 5), Rational(2, 7)};
const MomentSequence<Rational> kB{Rational(-1, 4), Rational(2, 3), Rational(1, 6), Rational(3, 5)};

void ac6(Outcome& o) {
  const auto ka = cumulants_from_moments(kA), kb = cumulants_from_moments(kB);
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    const Rational c = subleading_coeff_haar(kA, kB, k);
    o.require(c == closed_form_c(ka, kb, k), "closed form k=" + std::to_string(k));
    const Rational fp = free_otoc_prediction(kA, kB, k);
    double previous = INFINITY;
    for (std::int64_t dim : {16, 32, 64}) {
      const Rational scaled = (haar_otoc_exact(kA, kB, dim, k) - fp) * Rational(dim * dim);
      const double dev = k == 1 ? to_double(abs(scaled - c)) : rel(to_double(scaled), to_double(c));
      o.require(dev <= previous, "monotone convergence k=" + std::to_string(k));
      previous = dev;
    }
    worst = std::max(worst, previous);
    o.require(previous <= 0.05, "deviation at D=64 k=" + std::to_string(k));
  }
  o.note << "worst deviation at D=64 " << worst;
}

template <typename S>
void rmpu_fit(Outcome& o, const MomentSequence<S>& ma, const MomentSequence<S>& mb, int k, const std::string& label) {
  const double fp = to_double(free_otoc_prediction(ma, mb, k));
  const double ct = to_double(subleading_coeff_rmpu(ma, mb, 2, 2, k));
  std::vector<double> chis, deltas;
  for (int r = 1; r <= 4; ++r) {
    const RmpuGeometry g{2, r, 2};
    chis.push_back(static_cast<double>(g.chi()));
    deltas.push_back(std::abs(to_double(rmpu_otoc_exact(ma, mb, g, k)) - fp));
  }
  const PowerLawFit fit = fit_power_law(chis, deltas);
  const double coeff_dev = rel(deltas.back() * 256.0, std::abs(ct));
  o.require(std::abs(fit.exponent + 2.0) <= 0.3, "exponent " + label);
  o.require(coeff_dev <= 0.10, "coefficient " + label);
  o.note << label << ": exponent " << fit.exponent << ", coeff dev " << coeff_dev << "; ";
}

void ac7(Outcome& o) {
  const auto a = make_observable(ObservableKind::random_hermitian, {.seed = 71, .stream = 0}, 1, 1, 2);
  const auto b = make_observable(ObservableKind::random_hermitian, {.seed = 72, .stream = 0}, 3, 1, 2);
  for (int k = 2; k <= 3; ++k) {
    const auto ma = moments_of(a.matrix, k), mb = moments_of(b.matrix, k);
    rmpu_fit(o, kA, kB, k, "rational k=" + std::to_string(k));
    rmpu_fit(o, ma, mb, k, "qubit k=" + std::to_string(k));
    const double exact2 = rmpu_otoc_exact(ma, mb, RmpuGeometry{2, 1, 2}, k);
    const double oracle2 = oracle::gate_sequence_otoc(embed_operator(a.matrix, 1, 2, 3), embed_operator(b.matrix, 3, 2, 3), 2, 3, 1, {1, 2}, k);
    o.require(std::abs(exact2 - oracle2) < 1e-11, "gate oracle k=" + std::to_string(k));
    const auto rec = mc_otoc(EnsembleConfig::rmpu(RmpuGeometry{2, 1, 2}, 700 + k, 10000), a, b, k);
    const double z = std::abs(rec.mean - exact2) / rec.stderr_;
    o.require(z <= 4.0, "monte carlo k=" + std::to_string(k));
    o.note << "chi=2 mc |z| " << z << "; ";
  }
}

void ac8(Outcome& o) {
  const MomentSequence<Rational> t{0, Rational(1, 2), Rational(1, 3)};
  const MomentSequence<Rational> u{0, Rational(3, 4), Rational(-1, 5)};
  const auto kt = cumulants_from_moments(t), ku = cumulants_from_moments(u);
  const int n = 2, d = 2;
  const double target = to_double(kt[3] * ku[3]);
  double worst = 0.0;
  for (int r = 4; r <= 6; ++r) {
    const RmpuGeometry g{d, r, n};
    const double chi = static_cast<double>(g.chi());
    const double scaled = to_double(rmpu_otoc_exact(t, u, g, 3)) * std::pow(d, 2 * n) * chi * chi;
    worst = std::max(worst, rel(scaled, target));
  }
  o.require(worst <= 0.10, "k=3 traceless scaling");
  const Rational pre = Rational(n, d * d) - Rational(n - 1);
  o.require(subleading_coeff_rmpu(t, u, n, d, 2) == pre * subleading_coeff_haar(t, u, 2), "k=2 prefactor");
  const RmpuGeometry g{d, 6, n};
  const double chi = static_cast<double>(g.chi());
  const double k2 = to_double(rmpu_otoc_exact(t, u, g, 2) - free_otoc_prediction(t, u, 2)) * chi * chi;
  const double k2dev = rel(k2, to_double(pre * subleading_coeff_haar(t, u, 2)));
  o.require(k2dev <= 0.10, "k=2 convergence");
  o.note << "k=3 worst deviation (chi>=16) " << worst << ", k=2 deviation at chi=64 " << k2dev;
}

void ac9(Outcome& o) {
  for (int k = 2; k <= 3; ++k) {
    const double fk = static_cast<double>(frame_potential_haar(k));
    std::vector<double> chis, resid, rel_excess;
    for (int r = 3; r <= 6; ++r) {
      const RmpuGeometry g{2, r, 3};
      const Rational ex = frame_potential_rmpu_exact<Rational>(g, k);
      const Rational as = frame_potential_rmpu_asymptotic<Rational>(g, k);
      chis.push_back(static_cast<double>(g.chi()));
      resid.push_back(std::abs(to_double(ex - as)));
      rel_excess.push_back(to_double(ex) / fk - 1.0);
    }
    const PowerLawFit fit = fit_power_law(chis, resid);
    o.require(fit.exponent <= -3.0, "residual exponent k=" + std::to_string(k));
    const InversePowerFit inv = fit_inverse_powers(chis, rel_excess, {1, 2, 4});
    const double c1 = inv.coefficients(0), s1 = inv.stderrs(0);
    o.require(std::abs(c1) <= 3.0 * s1 + 1e-12, "chi^-1 coefficient k=" + std::to_string(k));
    o.note << "k=" << k << ": residual exponent " << fit.exponent << ", chi^-1 coeff " << c1 << " +- " << s1 << "; ";
  }
  const auto haar = mc_frame_potential(EnsembleConfig::global_haar(8, 901, 100000), 2);
  const double zh = std::abs(haar.mean - 2.0) / haar.stderr_;
  o.require(zh <= 5.0, "haar monte carlo");
  const RmpuGeometry g{2, 1, 2};
  const double exact = to_double(frame_potential_rmpu_exact<Rational>(g, 2));
  const auto rm = mc_frame_potential(EnsembleConfig::rmpu(g, 902, 100000), 2);
  const double zr = std::abs(rm.mean - exact) / rm.stderr_;
  o.require(zr <= 5.0, "rmpu monte carlo");
  o.note << "mc |z| haar " << zh << ", rmpu " << zr << " (exact " << exact << ")";
}

void ac10(Outcome& o) {
  const IdentityReport r = verify_frame_otoc_identity(4, 2);
  o.require(r.passed && r.relative_error <= 1e-10, "identity");
  o.note << r.terms << " terms, relative error " << r.relative_error;
}

void ac11(Outcome& o) {
  for (int k = 2; k <= 4; ++k) {
    for (int r = 1; r <= 3; ++r) {
      const RmpuGeometry g{2, r, 2};
      if (k > g.gate_dim() - 1) continue;
      o.require(rmpu_otoc_exact(kA, kB, g, k, 1) == haar_otoc_exact(kA, kB, g.gate_dim(), k), "light cone");
    }
  }
  const RmpuGeometry g{2, 1, 2};
  const auto a = make_observable(ObservableKind::random_hermitian, {.seed = 111, .stream = 0}, 3, 1, 2);
  const auto b = make_observable(ObservableKind::random_hermitian, {.seed = 112, .stream = 0}, 1, 1, 2);
  const auto rec = mc_otoc(EnsembleConfig::rmpu(g, 1101, 10000), a, b, 2);
  const double factor = moments_of(a.matrix, 2)[2] * moments_of(b.matrix, 2)[2];
  o.require(std::abs(rec.mean - factor) <= 4.0 * rec.stderr_, "out of cone");
  RmpuGeometry two = g;
  two.variant = RmpuGeometry::Variant::two_floor;
  auto a1 = a, b3 = b, a3 = a, b1 = b;
  a1.first_site = 1;
  b3.first_site = 3;
  a3.first_site = 3;
  b1.first_site = 1;
  const auto fwd = mc_otoc(EnsembleConfig::rmpu(two, 1102, 10000), a1, b3, 2);
  const auto bwd = mc_otoc(EnsembleConfig::rmpu(two, 1103, 10000), a3, b1, 2);
  const double z2 = std::abs(fwd.mean - bwd.mean) / std::hypot(fwd.stderr_, bwd.stderr_);
  o.require(z2 <= 4.0, "two-floor symmetry");
  const MomentSequence<Rational> p{Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  const Rational nonlocal = rmpu_otoc_nonlocal_leading(p, p, 2, 2);
  const Rational haar = free_otoc_prediction(tensor_power_moments(p, 2), tensor_power_moments(p, 2), 2);
  const double gap = to_double(abs(nonlocal - haar) / abs(haar));
  o.require(nonlocal != haar && gap >= 0.10, "nonlocal discrepancy");
  o.note << "out-of-cone |diff| " << std::abs(rec.mean - factor) << ", two-floor |z| " << z2 << ", nonlocal relative gap " << gap;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"exact weingarten inverse", ac1},
      {"genus-zero and genus-one pair counts", ac2},
      {"mobius function identities", ac3},
      {"moment-cumulant round trip", ac4},
      {"haar monte carlo vs exact otoc", ac5},
      {"haar subleading coefficient", ac6},
      {"rmpu chi^-2 approach to free value", ac7},
      {"traceless observable scaling", ac8},
      {"rmpu frame potential", ac9},
      {"frame potential pauli identity", ac10},
      {"structural otoc properties", ac11},
  };
  bool all = true;
  std::cout << std::setprecision(4);
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    o.note << std::setprecision(4);
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::string note = o.note.str();
    while (!note.empty() && (note.back() == ' ' || note.back() == ';')) note.pop_back();
    std::cout << "AC" << i + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  (" << note
              << ", " << std::fixed << std::setprecision(1) << secs << " s)" << std::defaultfloat << std::setprecision(4)
              << std::endl;
  }
  return all ? 0 : 1;
}
