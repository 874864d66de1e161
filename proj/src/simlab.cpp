#include "distcov/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "distcov/core/dcov.hpp"
#include "distcov/core/metrics.hpp"
#include "distcov/core/summation.hpp"
#include "distcov/parallel.hpp"

namespace distcov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mean_of(const std::vector<double>& v) {
    return pairwise_sum(v.data(), static_cast<Eigen::Index>(v.size())) /
           static_cast<double>(v.size());
}

/// Two-pass standard error of the mean.
double std_error_of(const std::vector<double>& v, double mean) {
    const auto n = static_cast<Eigen::Index>(v.size());
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = v[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
    return std::sqrt(var / static_cast<double>(n));
}

void generate_pair(const OracleSpec& spec, SplitMix64& stream, Eigen::Index n,
                   Eigen::VectorXd& x, Eigen::VectorXd& y) {
    x.resize(n);
    y.resize(n);
    switch (spec.generator) {
        case OracleSpec::Generator::bernoulli_half_pair:
            for (Eigen::Index i = 0; i < n; ++i) {
                x[i] = static_cast<double>(stream.next_below(2));
                y[i] = static_cast<double>(stream.next_below(2));
            }
            return;
        case OracleSpec::Generator::std_normal_pair:
            for (Eigen::Index i = 0; i < n; ++i) {
                x[i] = stream.next_normal();
                y[i] = stream.next_normal();
            }
            return;
        case OracleSpec::Generator::trig_pair:
            for (Eigen::Index i = 0; i < n; ++i) {
                const double u = stream.next_uniform(0.0, kTwoPi);
                x[i] = std::sin(spec.trig_k * u);
                y[i] = std::sin(spec.trig_m * u);
            }
            return;
        case OracleSpec::Generator::custom:
            if (!spec.custom)
                throw std::domain_error("custom oracle spec has no generator function");
            spec.custom(stream, x, y);
            return;
    }
}

} // namespace

OracleSpec OracleSpec::bernoulli_half() {
    OracleSpec spec;
    spec.generator = Generator::bernoulli_half_pair;
    spec.mu1 = 0.5; // P(X != X') for independent Bernoulli(1/2)
    spec.mu2 = 0.5;
    spec.v2_true = 0.0;
    return spec;
}

OracleSpec OracleSpec::std_normal() {
    OracleSpec spec;
    spec.generator = Generator::std_normal_pair;
    const double mu = 2.0 / std::sqrt(std::numbers::pi); // E|N(0,1) - N(0,1)'|
    spec.mu1 = mu;
    spec.mu2 = mu;
    spec.v2_true = 0.0;
    return spec;
}

OracleSpec OracleSpec::trig(int k, int m) {
    OracleSpec spec;
    spec.generator = Generator::trig_pair;
    spec.trig_k = k;
    spec.trig_m = m;
    return spec;
}

SimReport mc_vn2_expectation(const OracleSpec& spec, Eigen::Index n, Eigen::Index reps,
                             std::uint64_t seed, int threads) {
    if (!spec.mu1 || !spec.mu2 || !spec.v2_true)
        throw std::domain_error(
            "mc_vn2_expectation needs known mu1, mu2 and the population distance covariance");
    if (reps < 1000) throw std::domain_error("mc_vn2_expectation requires reps >= 1000");
    if (n < 1) throw std::domain_error("mc_vn2_expectation requires n >= 1");

    std::vector<double> values(static_cast<std::size_t>(reps));
    parallel_for(
        reps,
        [&](Eigen::Index i) {
            SplitMix64 stream = derive_stream(seed, static_cast<std::uint64_t>(i));
            Eigen::VectorXd x, y;
            generate_pair(spec, stream, n, x, y);
            const auto ax = double_center(euclidean_distances(x.reshaped(n, 1), 1));
            const auto by = double_center(euclidean_distances(y.reshaped(n, 1), 1));
            values[static_cast<std::size_t>(i)] = product_mean(ax.a, by.a);
        },
        threads);

    SimReport report;
    report.label = "vn2_mean";
    report.replicates = reps;
    report.estimate = mean_of(values);
    report.std_error = std_error_of(values, report.estimate);
    const double nd = static_cast<double>(n);
    report.target =
        (nd - 1.0) / (nd * nd) * ((nd - 2.0) * *spec.v2_true + *spec.mu1 * *spec.mu2);
    report.z_score = (report.estimate - *report.target) / report.std_error;
    return report;
}

std::vector<SimReport> trig_dcor_sweep(int k, const std::vector<int>& m_values, Eigen::Index n,
                                       Eigen::Index reps, std::uint64_t seed, int threads,
                                       bool mirror_u) {
    if (k < 1) throw std::domain_error("trig_dcor_sweep requires k >= 1");
    if (n < 100) throw std::domain_error("trig_dcor_sweep requires n >= 100");
    if (reps < 100) throw std::domain_error("trig_dcor_sweep requires reps >= 100");
    for (int m : m_values)
        if (m == k)
            throw std::domain_error(
                "trig_dcor_sweep: m = k is degenerate (identical frequencies)");

    std::vector<SimReport> reports;
    for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
        const int m = m_values[mi];
        const std::uint64_t m_seed = derive_stream(seed, 0x7472696700ULL + mi).next_u64();

        std::vector<double> dcors(static_cast<std::size_t>(reps));
        std::vector<double> cns(static_cast<std::size_t>(reps));
        parallel_for(
            reps,
            [&](Eigen::Index i) {
                SplitMix64 stream = derive_stream(m_seed, static_cast<std::uint64_t>(i));
                Eigen::VectorXd x(n), y(n);
                for (Eigen::Index j = 0; j < n; ++j) {
                    double u = stream.next_uniform(0.0, kTwoPi);
                    if (mirror_u) u = kTwoPi - u;
                    x[j] = std::sin(k * u);
                    y[j] = std::sin(m * u);
                }
                const auto ax = double_center(euclidean_distances(x.reshaped(n, 1), 1));
                const auto by = double_center(euclidean_distances(y.reshaped(n, 1), 1));
                dcors[static_cast<std::size_t>(i)] = dcov_estimates(ax, by).rn();
                cns[static_cast<std::size_t>(i)] = corrected_dcor(ax, by).cn;
            },
            threads);

        SimReport dcor_report;
        {
            std::ostringstream label;
            label << "dcor(m=" << m << ")";
            dcor_report.label = label.str();
        }
        dcor_report.replicates = reps;
        dcor_report.estimate = mean_of(dcors);
        dcor_report.std_error = std_error_of(dcors, dcor_report.estimate);
        reports.push_back(dcor_report);

        SimReport cn_report;
        {
            std::ostringstream label;
            label << "cn(m=" << m << ")";
            cn_report.label = label.str();
        }
        cn_report.replicates = reps;
        cn_report.estimate = mean_of(cns);
        cn_report.std_error = std_error_of(cns, cn_report.estimate);
        reports.push_back(cn_report);
    }
    return reports;
}

double sn_cauchy_check(Eigen::Index n, Eigen::Index reps, std::uint64_t seed, int threads) {
    if (n < 1) throw std::domain_error("sn_cauchy_check requires n >= 1");
    if (reps < 1000) throw std::domain_error("sn_cauchy_check requires reps >= 1000");

    std::vector<double> values(static_cast<std::size_t>(reps));
    parallel_for(
        reps,
        [&](Eigen::Index i) {
            SplitMix64 stream = derive_stream(seed, static_cast<std::uint64_t>(i));
            const double u = stream.next_uniform(0.0, kTwoPi);
            double s = 0.0;
            for (Eigen::Index j = 1; j <= n; ++j) s += std::sin(static_cast<double>(j) * u);
            values[static_cast<std::size_t>(i)] = s;
        },
        threads);
    return ks_distance(std::move(values), cauchy_half_cdf);
}

double highdim_null_distribution(Eigen::Index p, Eigen::Index q, Eigen::Index n,
                                 Eigen::Index reps, std::uint64_t seed, int threads) {
    if (p < 1 || q < 1 || n < 3 || reps < 2)
        throw std::domain_error("highdim_null_distribution: need p, q >= 1, n >= 3, reps >= 2");

    std::vector<double> values(static_cast<std::size_t>(reps));
    parallel_for(
        reps,
        [&](Eigen::Index i) {
            SplitMix64 stream = derive_stream(seed, static_cast<std::uint64_t>(i));
            Eigen::MatrixXd x(n, p), y(n, q);
            for (Eigen::Index r = 0; r < n; ++r)
                for (Eigen::Index c = 0; c < p; ++c) x(r, c) = stream.next_normal();
            for (Eigen::Index r = 0; r < n; ++r)
                for (Eigen::Index c = 0; c < q; ++c) y(r, c) = stream.next_normal();
            const double cn =
                corrected_dcor(euclidean_distances(x, 1), euclidean_distances(y, 1)).cn;
            values[static_cast<std::size_t>(i)] = static_cast<double>(n) * cn;
        },
        threads);
    return ks_distance(std::move(values), normal_var2_cdf);
}

double ks_distance(std::vector<double> values, const std::function<double(double)>& cdf) {
    if (values.empty()) throw std::domain_error("ks_distance: empty sample");
    std::sort(values.begin(), values.end());
    const double count = static_cast<double>(values.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        const double hi = (static_cast<double>(i) + 1.0) / count - f;
        const double lo = f - static_cast<double>(i) / count;
        sup = std::max({sup, hi, lo});
    }
    return sup;
}

double cauchy_half_cdf(double x) { return 0.5 + std::atan(2.0 * x) / std::numbers::pi; }

double normal_var2_cdf(double x) { return 0.5 * std::erfc(-x / 2.0); }

} // namespace distcov
