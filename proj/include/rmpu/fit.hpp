#pragma once

// Least-squares fits used to turn asymptotic statements into testable numbers.

#include <Eigen/Dense>

#include <vector>

namespace rmpu {

/// |y| = prefactor * x^exponent, fitted in log-log space.
struct PowerLawFit {
  double exponent = 0.0;
  double exponent_stderr = 0.0;
  double prefactor = 0.0;
  double log_prefactor_stderr = 0.0;
  int points = 0;
};

/// Requires at least 3 points with x > 0 and y != 0.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// y = sum_j c_j x^{-p_j}.
struct InversePowerFit {
  std::vector<int> powers;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd stderrs;
  double residual_rms = 0.0;
};

/// Ordinary least squares; needs more points than powers for a nonzero error estimate.
InversePowerFit fit_inverse_powers(const std::vector<double>& x, const std::vector<double>& y,
                                   const std::vector<int>& powers);

}  // namespace rmpu
