#include <doctest.h>

#include "distcov/core/centering.hpp"
#include "distcov/core/metrics.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

using namespace distcov;

TEST_CASE("double_center: order 1") {
    Eigen::MatrixXd d(1, 1);
    d << 0.0;
    const auto centered = double_center(d);
    CHECK(centered.a(0, 0) == 0.0);
    CHECK(centered.grand_mean == 0.0);
    CHECK(centered.n == 1);
}

TEST_CASE("double_center: constant off-diagonal rows/cols sum to zero") {
    Eigen::MatrixXd d(3, 3);
    d << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    const auto centered = double_center(d);
    const Eigen::MatrixXd expected = oracles::double_center(d);
    CHECK(((centered.a - expected).array().abs() < 1e-15).all());
    CHECK((centered.a.rowwise().sum().array().abs() < 1e-9 * 3).all());
    CHECK((centered.a.colwise().sum().array().abs() < 1e-9 * 3).all());
}

TEST_CASE("double_center: order-2 fixture (oracle-confirmed)") {
    Eigen::MatrixXd d(2, 2);
    d << 0, 2, 2, 0;
    // Oracle: row/col means are 1, grand mean 1, so
    // a00 = 0-1-1+1 = -1 and a01 = 2-1-1+1 = 1.
    const Eigen::MatrixXd expected = oracles::double_center(d);
    CHECK(expected(0, 0) == doctest::Approx(-1.0));
    CHECK(expected(0, 1) == doctest::Approx(1.0));

    const auto centered = double_center(d);
    CHECK(centered.grand_mean == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(((centered.a - expected).array().abs() < 1e-15).all());
}

TEST_CASE("double_center matches the direct oracle on random inputs") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_below(20));
        const Eigen::Index p = 1 + static_cast<Eigen::Index>(rng.next_below(3));
        const Eigen::MatrixXd d = euclidean_distances(test_support::random_matrix(n, p, rng));
        const auto centered = double_center(d);
        const Eigen::MatrixXd expected = oracles::double_center(d);

        CHECK(((centered.a - expected).array().abs() < 1e-12).all());
        const double tol = 1e-9 * static_cast<double>(n);
        CHECK((centered.a.rowwise().sum().array().abs() < tol).all());
        CHECK((centered.a.colwise().sum().array().abs() < tol).all());
        CHECK(centered.a.isApprox(centered.a.transpose(), 1e-14));
    }
}
