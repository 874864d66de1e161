#include "distcov/inference.hpp"

#include <cmath>
#include <vector>

#include "distcov/core/summation.hpp"
#include "distcov/errors.hpp"
#include "distcov/parallel.hpp"
#include "distcov/rng.hpp"

namespace distcov {

const char* to_string(Statistic s) noexcept {
    switch (s) {
        case Statistic::nV2_over_T2: return "nV2_over_T2";
        case Statistic::nCn: return "nCn";
        case Statistic::Cn: return "Cn";
        case Statistic::Vn2: return "Vn2";
    }
    return "unknown";
}

const char* to_string(TestMethod m) noexcept {
    switch (m) {
        case TestMethod::permutation: return "permutation";
        case TestMethod::normal_highdim: return "normal_highdim";
    }
    return "unknown";
}

PermutationDenominators permutation_denominators(const CenteredDistancesXd& ax,
                                                 const CenteredDistancesXd& by,
                                                 Statistic statistic) {
    PermutationDenominators d;
    d.n = ax.n;
    d.t2 = ax.grand_mean * by.grand_mean;
    if (statistic == Statistic::nV2_over_T2 && !(d.t2 > 0.0))
        throw DataError(DataError::Kind::DegenerateSample,
                        "T_2 is zero: the normalized statistic is undefined for constant samples");
    if (statistic == Statistic::Cn || statistic == Statistic::nCn) {
        d.un_xx = unbiased_dcov(product_mean(ax.a, ax.a), ax.grand_mean * ax.grand_mean, ax.n);
        d.un_yy = unbiased_dcov(product_mean(by.a, by.a), by.grand_mean * by.grand_mean, by.n);
    }
    return d;
}

namespace {

double statistic_from_vn2(double vn2, Statistic statistic,
                          const PermutationDenominators& d) {
    const double n = static_cast<double>(d.n);
    switch (statistic) {
        case Statistic::Vn2:
            return vn2;
        case Statistic::nV2_over_T2:
            return n * vn2 / d.t2;
        case Statistic::Cn:
        case Statistic::nCn: {
            const double denom2 = d.un_xx * d.un_yy;
            double cn = 0.0;
            if (denom2 > 0.0)
                cn = unbiased_dcov(vn2, d.t2, d.n) / std::sqrt(denom2);
            return statistic == Statistic::Cn ? cn : n * cn;
        }
    }
    return vn2;
}

/// (1/n^2) sum_{k,l} A[k,l] * B[perm(k), perm(l)], reduced pairwise. Both
/// matrices are symmetric, so columns stand in for rows and stay contiguous.
double permuted_product_mean(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             std::span<const int> perm) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd scratch(n);
    Eigen::VectorXd col_sums(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto a_col = a.col(k);
        const auto b_col = b.col(perm[static_cast<std::size_t>(k)]);
        for (Eigen::Index l = 0; l < n; ++l)
            scratch[l] = a_col[l] * b_col[perm[static_cast<std::size_t>(l)]];
        col_sums[k] = pairwise_sum(scratch.data(), n);
    }
    return pairwise_sum(col_sums.data(), n) / (static_cast<double>(n) * static_cast<double>(n));
}

} // namespace

double permuted_statistic(const CenteredDistancesXd& ax, const CenteredDistancesXd& by,
                          std::span<const int> perm, Statistic statistic,
                          const PermutationDenominators& denominators) {
    return statistic_from_vn2(permuted_product_mean(ax.a, by.a, perm), statistic, denominators);
}

double observed_statistic(const CenteredDistancesXd& ax, const CenteredDistancesXd& by,
                          Statistic statistic, const PermutationDenominators& denominators) {
    return statistic_from_vn2(product_mean(ax.a, by.a), statistic, denominators);
}

TestResult permutation_test(const CenteredDistancesXd& ax, const CenteredDistancesXd& by,
                            const PermutationPlan& plan) {
    if (ax.n != by.n)
        throw DataError(DataError::Kind::DimensionMismatch, "permutation_test: sample sizes differ");
    if (ax.n < 3)
        throw std::domain_error("permutation_test requires n >= 3");
    if (plan.replicates < 1)
        throw std::domain_error("permutation_test requires at least one replicate");

    const auto denominators = permutation_denominators(ax, by, plan.statistic);
    const double observed = observed_statistic(ax, by, plan.statistic, denominators);

    const Eigen::Index b = plan.replicates;
    std::vector<double> replicate_stats(static_cast<std::size_t>(b));
    parallel_for(
        b,
        [&](Eigen::Index i) {
            SplitMix64 stream = derive_stream(plan.seed, static_cast<std::uint64_t>(i));
            const std::vector<int> perm = random_permutation(static_cast<int>(ax.n), stream);
            replicate_stats[static_cast<std::size_t>(i)] =
                permuted_statistic(ax, by, perm, plan.statistic, denominators);
        },
        plan.threads);

    Eigen::Index at_least = 0;
    for (double stat : replicate_stats)
        if (stat >= observed) ++at_least;

    TestResult result;
    result.statistic_name = plan.statistic;
    result.statistic_value = observed;
    result.p_value = static_cast<double>(1 + at_least) / static_cast<double>(b + 1);
    result.method = TestMethod::permutation;
    result.replicates = b;
    result.seed = plan.seed;
    return result;
}

TestResult permutation_test(const Eigen::MatrixXd& dx, const Eigen::MatrixXd& dy,
                            const PermutationPlan& plan) {
    if (dx.rows() != dy.rows())
        throw DataError(DataError::Kind::DimensionMismatch, "permutation_test: sample sizes differ");
    return permutation_test(double_center(dx), double_center(dy), plan);
}

double normal2_upper_tail(double x) {
    // P(Z > x) for Z ~ Normal(0, sigma^2 = 2): 0.5 * erfc(x / (sigma*sqrt(2)))
    // with sigma*sqrt(2) = 2.
    return 0.5 * std::erfc(x / 2.0);
}

TestResult highdim_test(double cn, Eigen::Index n, Tail tail) {
    if (n < 3) throw std::domain_error("highdim_test requires n >= 3");

    TestResult result;
    result.statistic_name = Statistic::nCn;
    result.statistic_value = static_cast<double>(n) * cn;
    result.method = TestMethod::normal_highdim;
    result.replicates = 0;
    result.seed = 0;
    result.p_value = tail == Tail::upper
                         ? normal2_upper_tail(result.statistic_value)
                         : std::erfc(std::abs(result.statistic_value) / 2.0);
    return result;
}

} // namespace distcov
