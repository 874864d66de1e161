#ifndef DISTCOV_TESTS_SUPPORT_HPP
#define DISTCOV_TESTS_SUPPORT_HPP

#include <Eigen/Dense>

#include "distcov/rng.hpp"

namespace test_support {

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                                     distcov::SplitMix64& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.next_normal();
    return m;
}

/// Random orthogonal matrix: Q factor of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(Eigen::Index dim, distcov::SplitMix64& rng) {
    const Eigen::MatrixXd g = random_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    return qr.householderQ();
}

inline bool rel_close(double a, double b, double tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) <= tol * scale;
}

} // namespace test_support

#endif
