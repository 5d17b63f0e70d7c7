#include "rmpu/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace rmpu {

namespace {

struct Ols {
  Eigen::VectorXd beta;
  Eigen::VectorXd stderrs;
  double rss = 0.0;
};

Ols ordinary_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  Ols out;
  const auto qr = design.colPivHouseholderQr();
  if (qr.rank() < design.cols()) throw std::invalid_argument("fit design matrix is rank deficient");
  out.beta = qr.solve(y);
  const Eigen::VectorXd resid = y - design * out.beta;
  out.rss = resid.squaredNorm();
  const auto dof = design.rows() - design.cols();
  const double sigma2 = dof > 0 ? out.rss / static_cast<double>(dof) : 0.0;
  const Eigen::MatrixXd cov = (design.transpose() * design).inverse() * sigma2;
  out.stderrs = cov.diagonal().cwiseSqrt();
  return out;
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("power-law fit needs >= 3 paired points");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd ly(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (x[ui] <= 0.0 || y[ui] == 0.0) throw std::invalid_argument("power-law fit needs x > 0 and y != 0");
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x[ui]);
    ly(i) = std::log(std::abs(y[ui]));
  }
  const Ols ols = ordinary_least_squares(design, ly);
  PowerLawFit fit;
  fit.exponent = ols.beta(1);
  fit.exponent_stderr = ols.stderrs(1);
  fit.prefactor = std::exp(ols.beta(0));
  fit.log_prefactor_stderr = ols.stderrs(0);
  fit.points = static_cast<int>(n);
  return fit;
}

InversePowerFit fit_inverse_powers(const std::vector<double>& x, const std::vector<double>& y,
                                   const std::vector<int>& powers) {
  if (x.size() != y.size() || x.size() < powers.size() || powers.empty()) {
    throw std::invalid_argument("inverse-power fit needs at least as many points as terms");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto p = static_cast<Eigen::Index>(powers.size());
  Eigen::MatrixXd design(n, p);
  Eigen::VectorXd yy(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (Eigen::Index j = 0; j < p; ++j) design(i, j) = std::pow(x[ui], -powers[static_cast<std::size_t>(j)]);
    yy(i) = y[ui];
  }
  // Column scaling keeps the normal equations well conditioned across decades of x.
  const Eigen::VectorXd scale = design.colwise().norm().transpose();
  const Ols ols = ordinary_least_squares(design * scale.cwiseInverse().asDiagonal(), yy);
  InversePowerFit fit;
  fit.powers = powers;
  fit.coefficients = ols.beta.cwiseQuotient(scale);
  fit.stderrs = ols.stderrs.cwiseQuotient(scale);
  fit.residual_rms = std::sqrt(ols.rss / static_cast<double>(n));
  return fit;
}

}  // namespace rmpu
