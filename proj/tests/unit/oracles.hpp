// Independent reference implementations used only to cross-check the library.
// Everything here is written with plain loops and naive accumulation on
// purpose; none of it shares code with the implementation under test.
#ifndef DISTCOV_TESTS_ORACLES_HPP
#define DISTCOV_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace oracles {

inline Eigen::MatrixXd euclidean(const Eigen::MatrixXd& points) {
    const Eigen::Index n = points.rows();
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            double acc = 0.0;
            for (Eigen::Index j = 0; j < points.cols(); ++j) {
                const double diff = points(k, j) - points(l, j);
                acc += diff * diff;
            }
            d(k, l) = std::sqrt(acc);
        }
    }
    return d;
}

inline Eigen::MatrixXd double_center(const Eigen::MatrixXd& d) {
    const Eigen::Index n = d.rows();
    std::vector<double> row_mean(n, 0.0), col_mean(n, 0.0);
    double grand = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) {
            row_mean[k] += d(k, l);
            col_mean[l] += d(k, l);
            grand += d(k, l);
        }
    for (Eigen::Index k = 0; k < n; ++k) {
        row_mean[k] /= static_cast<double>(n);
        col_mean[k] /= static_cast<double>(n);
    }
    grand /= static_cast<double>(n) * static_cast<double>(n);

    Eigen::MatrixXd a(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l)
            a(k, l) = d(k, l) - row_mean[k] - col_mean[l] + grand;
    return a;
}

// V_n^2 expanded directly from uncentered distances (no centered matrix is
// formed): S1 + S2 - 2*S3 with S1 the mean entrywise product, S2 the product
// of grand means, S3 the row-coupled triple sum.
inline double vdcov2(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::Index n = a.rows();
    const double nd = static_cast<double>(n);
    double s1 = 0.0, sa = 0.0, sb = 0.0, s3 = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) {
            s1 += a(k, l) * b(k, l);
            sa += a(k, l);
            sb += b(k, l);
        }
    for (Eigen::Index k = 0; k < n; ++k) {
        double ra = 0.0, rb = 0.0;
        for (Eigen::Index l = 0; l < n; ++l) {
            ra += a(k, l);
            rb += b(k, l);
        }
        s3 += ra * rb;
    }
    s1 /= nd * nd;
    const double s2 = (sa / (nd * nd)) * (sb / (nd * nd));
    s3 /= nd * nd * nd;
    return s1 + s2 - 2.0 * s3;
}

inline double t2(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double sa = 0.0, sb = 0.0;
    for (Eigen::Index k = 0; k < a.rows(); ++k)
        for (Eigen::Index l = 0; l < a.cols(); ++l) {
            sa += a(k, l);
            sb += b(k, l);
        }
    const double n2 = static_cast<double>(a.rows()) * static_cast<double>(a.cols());
    return (sa / n2) * (sb / n2);
}

// Least squares through the normal equations; valid for the well-conditioned
// systems the tests generate.
inline Eigen::MatrixXd least_squares(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    Eigen::MatrixXd design(x.rows(), x.cols() + 1);
    design.col(0).setOnes();
    design.rightCols(x.cols()) = x;
    return (design.transpose() * design).inverse() * design.transpose() * y;
}

// Standard normal quantile by bisection on the erfc-based CDF.
inline double normal_quantile(double p) {
    auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace oracles

#endif
