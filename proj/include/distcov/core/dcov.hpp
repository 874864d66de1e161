#ifndef DISTCOV_CORE_DCOV_HPP
#define DISTCOV_CORE_DCOV_HPP

#include <Eigen/Core>

#include <cmath>
#include <sstream>
#include <utility>

#include "distcov/core/centering.hpp"
#include "distcov/core/summation.hpp"
#include "distcov/errors.hpp"

namespace distcov {

/// V-statistic quantities for one sample pair.
template <typename Scalar>
struct DcovEstimates {
    Scalar vn2{0};    // V_n^2(X,Y); nonnegative when both matrices are
                      // conditionally negative definite (all built-in metrics)
    Scalar dvar_x{0}; // V_n^2(X,X) >= 0
    Scalar dvar_y{0}; // V_n^2(Y,Y) >= 0
    Scalar rn2{0};    // squared distance correlation in [0,1]
    Scalar t2{0};     // normalizer: product of the two mean distances
    Eigen::Index n{0};

    Scalar rn() const { return std::sqrt(std::max(rn2, Scalar(0))); }
};

/// Bias-corrected quantities and the corrected correlation.
template <typename Scalar>
struct UnbiasedEstimates {
    Scalar un_xy{0}; // may be negative
    Scalar un_xx{0}; // >= 0 for n >= 3
    Scalar un_yy{0}; // >= 0 for n >= 3
    Scalar cn{0};    // corrected distance correlation; 1 by convention at n <= 2
    Eigen::Index n{0};
};

using DcovEstimatesXd = DcovEstimates<double>;
using UnbiasedEstimatesXd = UnbiasedEstimates<double>;

namespace detail {

inline void require_same_order(Eigen::Index nx, Eigen::Index ny, const char* what) {
    if (nx != ny) {
        std::ostringstream msg;
        msg << what << ": sample sizes differ (" << nx << " vs " << ny << ")";
        throw DataError(DataError::Kind::DimensionMismatch, msg.str());
    }
}

} // namespace detail

/// V_n^2 = average of the n^2 entrywise products of the two centered matrices.
template <typename Scalar>
Scalar v_dcov2(const CenteredDistances<Scalar>& ax, const CenteredDistances<Scalar>& by) {
    detail::require_same_order(ax.n, by.n, "v_dcov2");
    return product_mean(ax.a, by.a);
}

/// T_2: product of the mean pairwise distances of the two samples.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar t2(const Eigen::MatrixBase<DerivedX>& dx,
                             const Eigen::MatrixBase<DerivedY>& dy) {
    detail::require_same_order(dx.rows(), dy.rows(), "t2");
    using Scalar = typename DerivedX::Scalar;
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> mx = dx;
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> my = dy;
    return matrix_mean(mx) * matrix_mean(my);
}

/// U_n = n^2/((n-1)(n-2)) * [V_n^2 - T_2/(n-1)], defined for n >= 3.
template <typename Scalar>
Scalar unbiased_dcov(Scalar vn2, Scalar t2val, Eigen::Index n) {
    if (n < 3) throw std::domain_error("unbiased_dcov requires n >= 3");
    const Scalar nn = Scalar(n);
    return nn * nn / ((nn - 1) * (nn - 2)) * (vn2 - t2val / (nn - 1));
}

/// All V-statistic quantities from centered inputs. rn2 is the ratio
/// V_n^2 / sqrt(dvar_x * dvar_y) with a zero-variance branch; values are
/// snapped into [0,1] only within rounding tolerance, anything further out
/// means the inputs violated the library's assumptions.
template <typename Scalar>
DcovEstimates<Scalar> dcov_estimates(const CenteredDistances<Scalar>& ax,
                                     const CenteredDistances<Scalar>& by) {
    detail::require_same_order(ax.n, by.n, "dcov_estimates");
    const Eigen::Index n = ax.n;

    DcovEstimates<Scalar> est;
    est.n = n;
    est.t2 = ax.grand_mean * by.grand_mean;
    if (n <= 2) return est; // V-statistics carry no information below n = 3

    est.vn2 = product_mean(ax.a, by.a);
    est.dvar_x = product_mean(ax.a, ax.a);
    est.dvar_y = product_mean(by.a, by.a);

    const Scalar denom2 = est.dvar_x * est.dvar_y;
    if (denom2 > Scalar(0)) {
        Scalar r = est.vn2 / std::sqrt(denom2);
        if (r < Scalar(-1e-9) || r > Scalar(1) + Scalar(1e-9)) {
            std::ostringstream msg;
            msg << "squared distance correlation " << r << " escaped [0,1] beyond tolerance";
            throw InternalError(msg.str());
        }
        est.rn2 = std::min(std::max(r, Scalar(0)), Scalar(1));
    }
    return est;
}

template <typename DerivedX, typename DerivedY>
DcovEstimates<typename DerivedX::Scalar>
dcov_estimates(const Eigen::MatrixBase<DerivedX>& dx, const Eigen::MatrixBase<DerivedY>& dy) {
    detail::require_same_order(dx.rows(), dy.rows(), "dcov_estimates");
    return dcov_estimates(double_center(dx), double_center(dy));
}

/// Corrected distance correlation C_n built from the unbiased estimators.
/// C_n = U_n(X,Y)/sqrt(U_n(X)U_n(Y)) when the denominator is positive, 0
/// otherwise; C_n = 1 by convention for n <= 2. Negative values are kept.
template <typename Scalar>
UnbiasedEstimates<Scalar> corrected_dcor(const CenteredDistances<Scalar>& ax,
                                         const CenteredDistances<Scalar>& by) {
    detail::require_same_order(ax.n, by.n, "corrected_dcor");
    const Eigen::Index n = ax.n;

    UnbiasedEstimates<Scalar> est;
    est.n = n;
    if (n <= 2) {
        est.cn = Scalar(1);
        return est;
    }

    const Scalar gx = ax.grand_mean;
    const Scalar gy = by.grand_mean;
    est.un_xy = unbiased_dcov(product_mean(ax.a, by.a), gx * gy, n);
    est.un_xx = unbiased_dcov(product_mean(ax.a, ax.a), gx * gx, n);
    est.un_yy = unbiased_dcov(product_mean(by.a, by.a), gy * gy, n);

    const Scalar denom2 = est.un_xx * est.un_yy;
    est.cn = denom2 > Scalar(0) ? est.un_xy / std::sqrt(denom2) : Scalar(0);
    return est;
}

template <typename DerivedX, typename DerivedY>
UnbiasedEstimates<typename DerivedX::Scalar>
corrected_dcor(const Eigen::MatrixBase<DerivedX>& dx, const Eigen::MatrixBase<DerivedY>& dy) {
    detail::require_same_order(dx.rows(), dy.rows(), "corrected_dcor");
    return corrected_dcor(double_center(dx), double_center(dy));
}

/// The pair (n V_n^2 / T_2, n U_n / T_2). The two are linked by
/// n U_n / T_2 = n^2/((n-1)(n-2)) * [n V_n^2 / T_2 - n/(n-1)].
template <typename Scalar>
std::pair<Scalar, Scalar> normalized_stats(Scalar vn2, Scalar un, Scalar t2val, Eigen::Index n) {
    if (n < 3) throw std::domain_error("normalized_stats requires n >= 3");
    if (!(t2val > Scalar(0)))
        throw DataError(DataError::Kind::DegenerateSample,
                        "T_2 is zero: at least one sample is constant");
    const Scalar nn = Scalar(n);
    return {nn * vn2 / t2val, nn * un / t2val};
}

} // namespace distcov

#endif
