#include "distcov/applications.hpp"

#include <Eigen/QR>

#include <vector>

#include "distcov/core/metrics.hpp"
#include "distcov/errors.hpp"
#include "distcov/parallel.hpp"
#include "distcov/rng.hpp"

namespace distcov {

namespace {

/// The plan's statistic for an (X, residual) pairing; the residual-side
/// quantities vary per replicate under refitting, so everything is
/// recomputed from the centered matrices.
double residual_statistic(const CenteredDistancesXd& ax, const CenteredDistancesXd& ae,
                          Statistic statistic) {
    const double vn2 = v_dcov2(ax, ae);
    const double nd = static_cast<double>(ax.n);
    switch (statistic) {
        case Statistic::Vn2:
            return vn2;
        case Statistic::nV2_over_T2:
            return nd * vn2 / (ax.grand_mean * ae.grand_mean);
        case Statistic::Cn:
        case Statistic::nCn: {
            const double cn = corrected_dcor(ax, ae).cn;
            return statistic == Statistic::Cn ? cn : nd * cn;
        }
    }
    return vn2;
}

} // namespace

TestResult nonlinearity_test(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                             const PermutationPlan& plan) {
    const LinearModelFit fit = fit_least_squares(x, y);
    const Eigen::Index n = x.rows();

    const CenteredDistancesXd ax = double_center(euclidean_distances(x, plan.threads));
    const CenteredDistancesXd ae = double_center(euclidean_distances(fit.residuals, plan.threads));

    // Residuals at rounding scale relative to the response mean an exact fit.
    const double residual_scale = fit.residuals.cwiseAbs().maxCoeff();
    const double response_scale = y.cwiseAbs().maxCoeff();
    const bool zero_residuals = residual_scale <= 1e-12 * std::max(1.0, response_scale);

    if (zero_residuals || !(ax.grand_mean * ae.grand_mean > 0.0)) {
        // Constant regressors or numerically zero residuals: nothing to test.
        TestResult degenerate;
        degenerate.statistic_name = plan.statistic;
        degenerate.statistic_value = 0.0;
        degenerate.p_value = 1.0;
        degenerate.method = TestMethod::permutation;
        degenerate.replicates = plan.replicates;
        degenerate.seed = plan.seed;
        return degenerate;
    }
    if (n < 3) throw std::domain_error("nonlinearity_test requires n >= 3");
    if (plan.replicates < 1)
        throw std::domain_error("nonlinearity_test requires at least one replicate");

    const double observed = residual_statistic(ax, ae, plan.statistic);

    // Thin orthonormal basis of the design column space; residualizing a
    // vector v is v - q (q^T v).
    Eigen::MatrixXd design(n, x.cols() + 1);
    design.col(0).setOnes();
    design.rightCols(x.cols()) = x;
    const Eigen::MatrixXd basis =
        Eigen::HouseholderQR<Eigen::MatrixXd>(design).householderQ() *
        Eigen::MatrixXd::Identity(n, x.cols() + 1);

    const Eigen::Index b = plan.replicates;
    std::vector<double> replicate_stats(static_cast<std::size_t>(b));
    parallel_for(
        b,
        [&](Eigen::Index i) {
            SplitMix64 stream = derive_stream(plan.seed, static_cast<std::uint64_t>(i));
            const auto perm = random_permutation(static_cast<int>(n), stream);
            Eigen::MatrixXd shuffled(n, fit.residuals.cols());
            for (Eigen::Index r = 0; r < n; ++r)
                shuffled.row(r) = fit.residuals.row(perm[static_cast<std::size_t>(r)]);
            const Eigen::MatrixXd refit = shuffled - basis * (basis.transpose() * shuffled);
            const CenteredDistancesXd ae_perm = double_center(euclidean_distances(refit, 1));
            replicate_stats[static_cast<std::size_t>(i)] =
                ae_perm.grand_mean > 0.0 ? residual_statistic(ax, ae_perm, plan.statistic)
                                         : 0.0;
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

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> make_lag_pairs(const Eigen::MatrixXd& series,
                                                           Eigen::Index lag) {
    const Eigen::Index n = series.rows();
    if (lag < 0 || n - lag < 1)
        throw DataError(DataError::Kind::SeriesTooShort, "lag exceeds series length");
    const Eigen::Index m = n - lag;
    return {series.topRows(m), series.bottomRows(m)};
}

std::vector<SerialResult> serial_dcor(const Eigen::MatrixXd& series, Eigen::Index max_lag,
                                      const PermutationPlan& plan) {
    const Eigen::Index n = series.rows();
    if (max_lag < 1) throw std::domain_error("serial_dcor requires max_lag >= 1");
    if (max_lag > n - 3)
        throw DataError(DataError::Kind::SeriesTooShort,
                        "series too short: need max_lag <= length - 3");

    std::vector<SerialResult> results;
    results.reserve(static_cast<std::size_t>(max_lag));
    for (Eigen::Index h = 1; h <= max_lag; ++h) {
        const auto [head, tail] = make_lag_pairs(series, h);
        const CenteredDistancesXd ax = double_center(euclidean_distances(head, plan.threads));
        const CenteredDistancesXd by = double_center(euclidean_distances(tail, plan.threads));

        PermutationPlan lag_plan = plan;
        lag_plan.seed = derive_stream(plan.seed, 0x73657269616cULL + static_cast<std::uint64_t>(h))
                            .next_u64();
        const TestResult test = permutation_test(ax, by, lag_plan);

        SerialResult row;
        row.lag = h;
        row.effective_n = n - h;
        row.dcor = corrected_dcor(ax, by).cn;
        row.p_value = test.p_value;
        row.replicates = test.replicates;
        results.push_back(row);
    }
    return results;
}

} // namespace distcov
