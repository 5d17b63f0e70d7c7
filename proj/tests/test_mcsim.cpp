#include "oracles.hpp"
#include "rmpu/mcsim.hpp"
#include "rmpu/predict.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace rmpu;

TEST(Rng, PhiloxKnownAnswer) {
  // Reference block for counter = 0, key = 0.
  const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
  const auto ff = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(ff[0], 0x408f276du);
  EXPECT_EQ(ff[1], 0x41c83b0eu);
  EXPECT_EQ(ff[3], 0x6d5451fdu);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  RngStream a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_NE(x, c.uniform());
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(Haar, UnitarityAndTrivialDimension) {
  RngStream rng(1, 0);
  for (std::int64_t dim : {1, 2, 8, 33}) {
    const MatrixXc u = sample_haar_unitary(dim, rng);
    EXPECT_LT((u.adjoint() * u - MatrixXc::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_NEAR(std::abs(sample_haar_unitary(1, rng)(0, 0)), 1.0, 1e-14);
}

TEST(Haar, FirstMomentTwirlAndFramePotential) {
  const std::int64_t dim = 8, samples = 10000;
  MatrixXc x = oracle::random_hermitian(dim, 4);
  x(0, 0) += 0.5;
  std::vector<MatrixXc> sum(1, MatrixXc::Zero(dim, dim));
  MatrixXc sq = MatrixXc::Zero(dim, dim);
  std::vector<double> tr2;
  for (std::int64_t i = 0; i < samples; ++i) {
    RngStream rng(99, static_cast<std::uint64_t>(i));
    const MatrixXc u = sample_haar_unitary(dim, rng);
    const MatrixXc y = u * x * u.adjoint();
    sum[0] += y;
    sq += y.cwiseAbs2().cast<Complex>();
    tr2.push_back(std::norm(u.trace()));
  }
  const MatrixXc mean = sum[0] / static_cast<double>(samples);
  const MatrixXc target = x.trace() / static_cast<double>(dim) * MatrixXc::Identity(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double var = sq(i, j).real() / samples - std::norm(mean(i, j));
      EXPECT_LT(std::abs(mean(i, j) - target(i, j)), 5.0 * std::sqrt(var / samples) + 1e-12);
    }
  }
  double m = 0.0, v = 0.0;
  for (double t : tr2) m += t;
  m /= samples;
  for (double t : tr2) v += (t - m) * (t - m);
  EXPECT_LT(std::abs(m - 1.0), 5.0 * std::sqrt(v / (samples - 1) / samples));
}

namespace {

// Two-sample Kolmogorov-Smirnov p-value via the asymptotic distribution.
double ks_pvalue(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double dmax = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i; else ++j;
    dmax = std::max(dmax, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  const double ne = double(a.size()) * b.size() / (a.size() + b.size());
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * dmax;
  double p = 0.0;
  for (int t = 1; t <= 100; ++t) p += 2.0 * ((t % 2) ? 1.0 : -1.0) * std::exp(-2.0 * t * t * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

TEST(Haar, LeftInvariance) {
  const std::int64_t dim = 8;
  RngStream fixed(1234, 0);
  const MatrixXc v = sample_haar_unitary(dim, fixed);
  std::vector<double> plain, shifted;
  for (int i = 0; i < 4000; ++i) {
    RngStream r1(5, static_cast<std::uint64_t>(i)), r2(6, static_cast<std::uint64_t>(i));
    plain.push_back(std::norm(sample_haar_unitary(dim, r1).trace()));
    shifted.push_back(std::norm((v * sample_haar_unitary(dim, r2)).trace()));
  }
  EXPECT_GT(ks_pvalue(plain, shifted), 0.01);
}

TEST(Rmpu, StructureOfSamples) {
  RngStream rng(2, 0);
  const auto one = EnsembleConfig::rmpu(RmpuGeometry{2, 2, 1}, 2, 10);
  EXPECT_EQ(build_rmpu(one, rng).rows(), 8);
  const auto cfg = EnsembleConfig::rmpu(RmpuGeometry{2, 1, 3}, 2, 10);
  const MatrixXc u = build_rmpu(cfg, rng);
  EXPECT_LT((u.adjoint() * u - MatrixXc::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-10);
  const auto e = operator_entanglement(u, 2, 4, 2);
  EXPECT_LE(e.entropy, std::log(2.0) + std::log(2.0) + 1e-9);
  EXPECT_LE(e.schmidt_rank, 4);
  EXPECT_THROW(EnsembleConfig::rmpu(RmpuGeometry{2, 1, 8}, 1, 10).validate(), ResourceError);
  EXPECT_THROW(EnsembleConfig::rmpu(RmpuGeometry{2, 1, 2}, 1, 1).validate(), std::invalid_argument);
}

TEST(Rmpu, HaarGlobalOperatorEntanglementExceedsStaircaseBound) {
  RngStream rng(3, 0);
  const MatrixXc u = sample_haar_unitary(16, rng);
  EXPECT_GT(operator_entanglement(u, 2, 4, 2).schmidt_rank, 4);
}

TEST(Observables, Factory) {
  const auto z = make_observable(ObservableKind::pauli_string, {.pauli = "Z"}, 1, 1, 2);
  EXPECT_TRUE(z.traceless);
  const auto p = make_observable(ObservableKind::projector, {.rank = 4}, 1, 3, 2);
  const auto mp = moments_of(p.matrix, 4);
  for (int j = 1; j <= 4; ++j) EXPECT_DOUBLE_EQ(mp[j], 0.5);
  const auto s = make_observable(ObservableKind::shifted_projector, {.rank = 4}, 1, 3, 2);
  EXPECT_TRUE(s.traceless);
  EXPECT_DOUBLE_EQ(moments_of(s.matrix, 2)[2], 0.25);
  const auto h = make_observable(ObservableKind::random_hermitian, {.seed = 3, .stream = 1}, 1, 2, 2);
  EXPECT_LE(Eigen::SelfAdjointEigenSolver<MatrixXc>(h.matrix).eigenvalues().cwiseAbs().maxCoeff(), 1.0 + 1e-12);
  EXPECT_THROW(make_observable(ObservableKind::pauli_string, {.pauli = "Q"}, 1, 1, 2), std::invalid_argument);
  ObservableSpec bad{MatrixXc::Ones(2, 2) * Complex(0, 1)};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(MonteCarlo, IdentityObservableHasNoVariance) {
  const auto cfg = EnsembleConfig::rmpu(RmpuGeometry{2, 1, 2}, 4, 50);
  ObservableSpec id{MatrixXc::Identity(2, 2)};
  const auto b = make_observable(ObservableKind::projector, {.rank = 1}, 3, 1, 2);
  const auto rec = mc_otoc(cfg, id, b, 3);
  EXPECT_NEAR(rec.mean, 0.5, 1e-12);
  EXPECT_LT(rec.stderr_, 1e-12);
  EXPECT_GT(rec.stderr_, 0.0);
}

TEST(MonteCarlo, SeedDeterminism) {
  const auto cfg = EnsembleConfig::rmpu(RmpuGeometry{2, 1, 2}, 17, 200);
  const auto a = make_observable(ObservableKind::random_hermitian, {.seed = 1}, 1, 1, 2);
  const auto b = make_observable(ObservableKind::random_hermitian, {.seed = 2}, 3, 1, 2);
  const auto r1 = mc_otoc(cfg, a, b, 2);
  const auto r2 = mc_otoc(cfg, a, b, 2);
  EXPECT_EQ(r1.mean, r2.mean);
  EXPECT_EQ(r1.stderr_, r2.stderr_);
  auto other = cfg;
  other.seed = 18;
  EXPECT_NE(mc_otoc(other, a, b, 2).mean, r1.mean);
}

TEST(MonteCarlo, StaircaseAgreesWithExactContraction) {
  const auto cfg = EnsembleConfig::rmpu(RmpuGeometry{2, 1, 2}, 8, 10000);
  const auto a = make_observable(ObservableKind::random_hermitian, {.seed = 11}, 1, 1, 2);
  const auto b = make_observable(ObservableKind::random_hermitian, {.seed = 12}, 3, 1, 2);
  const auto rec = mc_otoc(cfg, a, b, 2);
  const double exact = rmpu_otoc_exact(moments_of(a.matrix, 2), moments_of(b.matrix, 2), RmpuGeometry{2, 1, 2}, 2);
  EXPECT_LT(std::abs(rec.mean - exact), 4.0 * rec.stderr_);
}

TEST(MonteCarlo, MirroredOrientationMatchesInCone) {
  auto asc = EnsembleConfig::rmpu(RmpuGeometry{2, 1, 2}, 8, 10000);
  auto mir = asc;
  mir.orientation = EnsembleConfig::Orientation::mirrored;
  mir.seed = 9;
  const auto a1 = make_observable(ObservableKind::random_hermitian, {.seed = 11}, 1, 1, 2);
  const auto b3 = make_observable(ObservableKind::random_hermitian, {.seed = 12}, 3, 1, 2);
  auto a3 = a1;
  a3.first_site = 3;
  auto b1 = b3;
  b1.first_site = 1;
  const auto r1 = mc_otoc(asc, a1, b3, 2);
  const auto r2 = mc_otoc(mir, a3, b1, 2);
  EXPECT_LT(std::abs(r1.mean - r2.mean), 4.0 * std::hypot(r1.stderr_, r2.stderr_));
}

TEST(MonteCarlo, FramePotentialFirstMoment) {
  const auto rec = mc_frame_potential(EnsembleConfig::global_haar(8, 3, 20000), 1);
  EXPECT_LT(std::abs(rec.mean - 1.0), 5.0 * rec.stderr_);
  EXPECT_THROW(mc_frame_potential(EnsembleConfig::global_haar(8, 3, 50), 1), std::invalid_argument);
  const auto noisy = mc_frame_potential(EnsembleConfig::global_haar(8, 3, 100), 4);
  EXPECT_FALSE(noisy.guidance.empty());
}

TEST(MonteCarlo, EstimateCsv) {
  std::ostringstream os;
  write_estimate_csv(os, {{"otoc_k2", 0.5, 0.01, 100, 3, ""}});
  EXPECT_EQ(os.str(), "quantity,mean,stderr,samples,seed,guidance\notoc_k2,0.5,0.01,100,3,\"\"\n");
}
