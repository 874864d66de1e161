#include <doctest.h>

#include <string>
#include <vector>

#include "distcov/core/metrics.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

using namespace distcov;

TEST_CASE("euclidean_distances: single observation") {
    Eigen::MatrixXd point(1, 3);
    point << 4.0, -1.0, 7.5;
    const Eigen::MatrixXd d = euclidean_distances(point);
    REQUIRE(d.rows() == 1);
    CHECK(d(0, 0) == 0.0);
}

TEST_CASE("euclidean_distances: 3-4-5 triangle") {
    Eigen::MatrixXd points(2, 2);
    points << 0.0, 3.0, 4.0, 0.0;
    const Eigen::MatrixXd d = euclidean_distances(points);
    CHECK(d(0, 1) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(d(1, 0) == d(0, 1));
    CHECK(d(0, 0) == 0.0);
    CHECK(d(1, 1) == 0.0);
}

TEST_CASE("euclidean_distances matches the direct-definition oracle") {
    SplitMix64 rng(21);
    const Eigen::MatrixXd points = test_support::random_matrix(6, 4, rng);
    const Eigen::MatrixXd d = euclidean_distances(points);
    const Eigen::MatrixXd expected = oracles::euclidean(points);
    for (Eigen::Index k = 0; k < 6; ++k)
        for (Eigen::Index l = 0; l < 6; ++l)
            CHECK(test_support::rel_close(d(k, l), expected(k, l), 1e-12));
}

TEST_CASE("euclidean_distances rejects non-finite input") {
    Eigen::MatrixXd points(2, 1);
    points << 0.0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(euclidean_distances(points), DataError);
    try {
        euclidean_distances(points);
    } catch (const DataError& e) {
        CHECK(e.kind() == DataError::Kind::NonFinite);
    }
}

TEST_CASE("euclidean_distances: parallel result is bit-identical") {
    SplitMix64 rng(22);
    const Eigen::MatrixXd points = test_support::random_matrix(67, 3, rng);
    const Eigen::MatrixXd seq = euclidean_distances(points, 1);
    const Eigen::MatrixXd par = euclidean_distances(points, 4);
    CHECK((seq.array() == par.array()).all());
}

TEST_CASE("discrete_distances definitions") {
    using Labels = std::vector<std::string>;
    const Eigen::MatrixXd all_equal = discrete_distances(Labels{"a", "a", "a"});
    CHECK(all_equal.isZero(0.0));

    const Eigen::MatrixXd pair = discrete_distances(Labels{"a", "b"});
    CHECK(pair(0, 0) == 0.0);
    CHECK(pair(0, 1) == 1.0);
    CHECK(pair(1, 0) == 1.0);
    CHECK(pair(1, 1) == 0.0);

    const Eigen::MatrixXd aba = discrete_distances(Labels{"a", "b", "a"});
    Eigen::MatrixXd expected(3, 3);
    expected << 0, 1, 0, 1, 0, 1, 0, 1, 0;
    CHECK((aba.array() == expected.array()).all());

    CHECK_THROWS_AS(discrete_distances(Labels{}), DataError);
}

TEST_CASE("validate_distance_matrix accepts and canonicalizes") {
    Eigen::MatrixXd good(2, 2);
    good << 0, 2, 2, 0;
    const Eigen::MatrixXd v = validate_distance_matrix(good);
    CHECK((v.array() == good.array()).all());

    // Near-symmetric input is symmetrized after the tolerance check.
    Eigen::MatrixXd near(2, 2);
    near << 0, 1.0 + 4e-10, 1.0, 0;
    const Eigen::MatrixXd canon = validate_distance_matrix(near);
    CHECK(canon(0, 1) == canon(1, 0));
    CHECK(canon(0, 1) == doctest::Approx(1.0 + 2e-10).epsilon(1e-14));

    Eigen::MatrixXd tiny_diag(2, 2);
    tiny_diag << 5e-10, 1, 1, 5e-10;
    CHECK(validate_distance_matrix(tiny_diag).diagonal().isZero(0.0));
}

TEST_CASE("validate_distance_matrix rejects each defect with its own kind") {
    auto kind_of = [](const Eigen::MatrixXd& m) {
        try {
            validate_distance_matrix(m);
        } catch (const DataError& e) {
            return e.kind();
        }
        return DataError::Kind::EmptySample; // unreachable for these inputs
    };

    Eigen::MatrixXd asym(2, 2);
    asym << 0, 1, 2, 0;
    CHECK(kind_of(asym) == DataError::Kind::Asymmetry);

    Eigen::MatrixXd negative(2, 2);
    negative << 0, -1, -1, 0;
    CHECK(kind_of(negative) == DataError::Kind::NegativeEntry);

    Eigen::MatrixXd diag(2, 2);
    diag << 0.5, 1, 1, 0;
    CHECK(kind_of(diag) == DataError::Kind::NonzeroDiagonal);

    Eigen::MatrixXd rect(2, 3);
    rect.setZero();
    CHECK(kind_of(rect) == DataError::Kind::NonSquare);

    Eigen::MatrixXd inf(2, 2);
    inf << 0, std::numeric_limits<double>::infinity(), 1, 0;
    CHECK(kind_of(inf) == DataError::Kind::NonFinite);
}

TEST_CASE("constructed matrices satisfy the distance-matrix contract exactly") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_below(10));
        const Eigen::Index p = 1 + static_cast<Eigen::Index>(rng.next_below(4));
        const Eigen::MatrixXd d = euclidean_distances(test_support::random_matrix(n, p, rng));
        for (Eigen::Index k = 0; k < n; ++k) {
            CHECK(d(k, k) == 0.0);
            for (Eigen::Index l = 0; l < n; ++l) {
                CHECK(d(k, l) == d(l, k));
                CHECK(d(k, l) >= 0.0);
            }
        }
    }
}

TEST_CASE("euclidean distances are invariant to rigid motions, scale by |c|") {
    SplitMix64 rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.next_below(8));
        const Eigen::Index p = 1 + static_cast<Eigen::Index>(rng.next_below(4));
        const Eigen::MatrixXd points = test_support::random_matrix(n, p, rng);
        const Eigen::MatrixXd d = euclidean_distances(points);

        const Eigen::MatrixXd q = test_support::random_orthogonal(p, rng);
        const Eigen::RowVectorXd shift = test_support::random_matrix(1, p, rng);
        const Eigen::MatrixXd moved =
            (points * q.transpose()).rowwise() + shift;
        const Eigen::MatrixXd d_moved = euclidean_distances(moved);
        CHECK(((d - d_moved).array().abs() < 1e-9).all());

        const double c = -2.0 + 4.0 * rng.next_double();
        const Eigen::MatrixXd d_scaled = euclidean_distances((c * points).eval());
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index l = 0; l < n; ++l)
                CHECK(test_support::rel_close(d_scaled(k, l), std::abs(c) * d(k, l), 1e-12));
    }
}
