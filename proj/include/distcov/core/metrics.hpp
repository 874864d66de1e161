#ifndef DISTCOV_CORE_METRICS_HPP
#define DISTCOV_CORE_METRICS_HPP

#include <Eigen/Core>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "distcov/errors.hpp"
#include "distcov/parallel.hpp"

namespace distcov {

/// Absolute tolerance for accepting near-symmetric / near-zero-diagonal
/// matrices in validate_distance_matrix.
inline constexpr double kDistanceMatrixTolerance = 1e-9;

/// Pairwise Euclidean distances between the rows of `points` (n x p, one
/// observation per row). Entries are computed independently per pair, so the
/// row-parallel result is bit-identical to the sequential one.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
euclidean_distances(const Eigen::MatrixBase<Derived>& points, int threads = 0) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = points.rows();
    if (n < 1)
        throw DataError(DataError::Kind::EmptySample, "sample must contain at least one observation");
    if (!points.allFinite())
        throw DataError(DataError::Kind::NonFinite, "sample contains non-finite coordinates");

    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> pts = points;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d(n, n);
    parallel_for(
        n,
        [&](Eigen::Index k) {
            d(k, k) = Scalar(0);
            for (Eigen::Index l = 0; l < k; ++l) {
                const Scalar dist = (pts.row(k) - pts.row(l)).norm();
                d(k, l) = dist;
                d(l, k) = dist;
            }
        },
        threads);
    return d;
}

/// 0/1 distances between categorical labels: 0 if equal, 1 otherwise.
template <typename Label>
Eigen::MatrixXd discrete_distances(const std::vector<Label>& labels) {
    const Eigen::Index n = static_cast<Eigen::Index>(labels.size());
    if (n < 1)
        throw DataError(DataError::Kind::EmptySample, "sample must contain at least one observation");
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        d(k, k) = 0.0;
        for (Eigen::Index l = 0; l < k; ++l) {
            const double dist = labels[static_cast<std::size_t>(k)] ==
                                        labels[static_cast<std::size_t>(l)]
                                    ? 0.0
                                    : 1.0;
            d(k, l) = dist;
            d(l, k) = dist;
        }
    }
    return d;
}

/// Check a user-supplied matrix against the distance-matrix contract:
/// square, finite, symmetric and zero-diagonal within kDistanceMatrixTolerance,
/// nonnegative. On success the matrix is canonicalized: symmetrized as
/// (M + M^T)/2 and the diagonal forced to exactly zero.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
validate_distance_matrix(const Eigen::MatrixBase<Derived>& raw) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = raw.rows();
    if (n != raw.cols()) {
        std::ostringstream msg;
        msg << "distance matrix must be square, got " << raw.rows() << "x" << raw.cols();
        throw DataError(DataError::Kind::NonSquare, msg.str());
    }
    if (n < 1)
        throw DataError(DataError::Kind::EmptySample, "distance matrix must have order >= 1");
    if (!raw.allFinite())
        throw DataError(DataError::Kind::NonFinite, "distance matrix contains non-finite entries");

    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < k; ++l) {
            if (std::abs(static_cast<double>(raw(k, l) - raw(l, k))) > kDistanceMatrixTolerance) {
                std::ostringstream msg;
                msg << "distance matrix is asymmetric at (" << k << "," << l << "): "
                    << raw(k, l) << " vs " << raw(l, k);
                throw DataError(DataError::Kind::Asymmetry, msg.str());
            }
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            if (raw(k, l) < Scalar(0)) {
                std::ostringstream msg;
                msg << "distance matrix has negative entry " << raw(k, l) << " at (" << k << ","
                    << l << ")";
                throw DataError(DataError::Kind::NegativeEntry, msg.str());
            }
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(static_cast<double>(raw(k, k))) > kDistanceMatrixTolerance) {
            std::ostringstream msg;
            msg << "distance matrix has nonzero diagonal entry " << raw(k, k) << " at (" << k
                << "," << k << ")";
            throw DataError(DataError::Kind::NonzeroDiagonal, msg.str());
        }
    }

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d =
        ((raw + raw.transpose()) / Scalar(2)).eval();
    d.diagonal().setZero();
    return d;
}

} // namespace distcov

#endif
