#ifndef DISTCOV_APPLICATIONS_HPP
#define DISTCOV_APPLICATIONS_HPP

#include <Eigen/Core>

#include <utility>
#include <vector>

#include "distcov/inference.hpp"
#include "distcov/linear_model.hpp"

namespace distcov {

/// Distance-covariance test of nonlinearity: fit Y on [1 X] by least squares,
/// then test the regressors against the residuals for independence on their
/// Euclidean distance matrices.
///
/// Replicates use Freedman-Lane resampling: permuted residuals are passed
/// back through the least-squares projector before the statistic is
/// recomputed. Fitted residuals are exactly orthogonal to the regressors, so
/// permuting their indices alone leaves the observed statistic in the far
/// low tail of the replicate distribution and the test barely ever rejects;
/// re-projecting restores the nominal size.
///
/// If either distance matrix is degenerate (a constant sample, e.g. an
/// exactly linear model with zero noise), the test reports statistic 0 with
/// p = 1 instead of failing: there is no dependence signal left to permute.
TestResult nonlinearity_test(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                             const PermutationPlan& plan);

struct SerialResult {
    Eigen::Index lag{0};
    Eigen::Index effective_n{0}; // series length - lag
    double dcor{0.0};            // corrected distance correlation of the pairing
    double p_value{1.0};         // approximate: overlapping pairs are not i.i.d.
    Eigen::Index replicates{0};
};

/// The lagged pairing (Z_t, Z_{t+h}) for t = 1..n-h, as two row-aligned
/// matrices. h = 0 yields the self-pairing and is permitted here for
/// diagnostics only; serial_dcor itself starts at lag 1.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> make_lag_pairs(const Eigen::MatrixXd& series,
                                                           Eigen::Index lag);

/// Serial dependence scan: for each lag h in 1..max_lag, the corrected
/// distance correlation of (Z_t, Z_{t+h}) and a permutation p-value treating
/// the pairs as exchangeable.
std::vector<SerialResult> serial_dcor(const Eigen::MatrixXd& series, Eigen::Index max_lag,
                                      const PermutationPlan& plan);

} // namespace distcov

#endif
