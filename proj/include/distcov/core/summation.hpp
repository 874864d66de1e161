#ifndef DISTCOV_CORE_SUMMATION_HPP
#define DISTCOV_CORE_SUMMATION_HPP

#include <Eigen/Core>

namespace distcov {

/// Pairwise (tree) summation over a contiguous range. Error grows O(log n)
/// instead of O(n), and the reduction order is fixed, so results do not
/// depend on thread count or vectorization width.
template <typename Scalar>
Scalar pairwise_sum(const Scalar* data, Eigen::Index size) {
    if (size <= 32) {
        Scalar acc{0};
        for (Eigen::Index i = 0; i < size; ++i) acc += data[i];
        return acc;
    }
    const Eigen::Index half = size / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, size - half);
}

template <typename Scalar>
Scalar pairwise_sum(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
    return pairwise_sum(v.data(), v.size());
}

/// Sum of all entries of a dense column-major matrix, pairwise per column and
/// then pairwise across the column totals.
template <typename Scalar>
Scalar matrix_sum(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> col_sums(m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        col_sums[c] = pairwise_sum(m.col(c).data(), m.rows());
    return pairwise_sum(col_sums.data(), col_sums.size());
}

template <typename Scalar>
Scalar matrix_mean(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    return matrix_sum(m) / (Scalar(m.rows()) * Scalar(m.cols()));
}

/// (1/n^2) * sum_{k,l} a[k,l] * b[k,l] for same-order dense matrices.
/// The products are reduced pairwise column by column.
template <typename Scalar>
Scalar product_mean(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b) {
    eigen_assert(a.rows() == b.rows() && a.cols() == b.cols());
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> scratch(a.rows());
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> col_sums(a.cols());
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        scratch = a.col(c).cwiseProduct(b.col(c));
        col_sums[c] = pairwise_sum(scratch.data(), scratch.size());
    }
    return pairwise_sum(col_sums.data(), col_sums.size()) /
           (Scalar(a.rows()) * Scalar(a.cols()));
}

} // namespace distcov

#endif
