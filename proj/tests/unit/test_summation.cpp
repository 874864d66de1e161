#include <doctest.h>

#include "distcov/core/summation.hpp"
#include "distcov/rng.hpp"

#include "test_support.hpp"

using namespace distcov;

TEST_CASE("pairwise_sum matches naive accumulation") {
    SplitMix64 rng(11);
    for (Eigen::Index size : {0, 1, 5, 32, 33, 64, 100, 1000, 4097}) {
        Eigen::VectorXd v(size);
        long double naive = 0.0L;
        for (Eigen::Index i = 0; i < size; ++i) {
            v[i] = rng.next_normal();
            naive += v[i];
        }
        CHECK(test_support::rel_close(pairwise_sum(v.data(), size),
                                      static_cast<double>(naive), 1e-12));
    }
}

TEST_CASE("matrix_sum and product_mean match naive loops") {
    SplitMix64 rng(12);
    const Eigen::MatrixXd a = test_support::random_matrix(37, 37, rng);
    const Eigen::MatrixXd b = test_support::random_matrix(37, 37, rng);

    long double sum = 0.0L, prod = 0.0L;
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            sum += a(r, c);
            prod += a(r, c) * b(r, c);
        }
    CHECK(test_support::rel_close(matrix_sum(a), static_cast<double>(sum), 1e-12));
    CHECK(test_support::rel_close(product_mean(a, b),
                                  static_cast<double>(prod) / (37.0 * 37.0), 1e-12));
}
