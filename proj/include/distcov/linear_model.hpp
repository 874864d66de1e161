#ifndef DISTCOV_LINEAR_MODEL_HPP
#define DISTCOV_LINEAR_MODEL_HPP

#include <Eigen/Core>

namespace distcov {

/// Ordinary least squares fit of Y on [1 X].
struct LinearModelFit {
    Eigen::MatrixXd coefficients; // (p+1) x q, intercept in row 0
    Eigen::MatrixXd residuals;    // n x q
    Eigen::MatrixXd fitted;       // n x q
};

/// Fit by column-pivoted QR. The design matrix (intercept column prepended)
/// must have full column rank: pivots whose magnitude falls below 1e-10
/// relative to the largest are treated as zero and reported as the offending
/// columns ("intercept" or the 1-based data column index).
LinearModelFit fit_least_squares(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

} // namespace distcov

#endif
