#ifndef DISTCOV_CORE_CENTERING_HPP
#define DISTCOV_CORE_CENTERING_HPP

#include <Eigen/Core>

#include "distcov/core/summation.hpp"

namespace distcov {

/// Double-centered distance matrix together with the grand mean of the
/// uncentered distances (needed later as the normalizer factor).
/// Every row and column of `a` sums to zero up to rounding.
template <typename Scalar>
struct CenteredDistances {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a;
    Scalar grand_mean{0};
    Eigen::Index n{0};
};

using CenteredDistancesXd = CenteredDistances<double>;

/// a[k,l] = d[k,l] - rowmean_k - colmean_l + grandmean.
/// Input is a valid (symmetric) distance matrix, so row means equal column
/// means; they are accumulated pairwise, one tree per row.
template <typename Derived>
CenteredDistances<typename Derived::Scalar>
double_center(const Eigen::MatrixBase<Derived>& d) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = d.rows();
    eigen_assert(n == d.cols());

    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dm = d;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> col_means(n);
    for (Eigen::Index c = 0; c < n; ++c)
        col_means[c] = pairwise_sum(dm.col(c).data(), n) / Scalar(n);
    const Scalar grand = pairwise_sum(col_means.data(), n) / Scalar(n);

    CenteredDistances<Scalar> out;
    out.a = ((dm.colwise() - col_means).rowwise() - col_means.transpose()).array() + grand;
    out.grand_mean = grand;
    out.n = n;
    return out;
}

} // namespace distcov

#endif
