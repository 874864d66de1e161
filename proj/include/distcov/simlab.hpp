#ifndef DISTCOV_SIMLAB_HPP
#define DISTCOV_SIMLAB_HPP

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "distcov/rng.hpp"

namespace distcov {

/// A sampling model with whatever population quantities are known for it:
/// mu1 = E|X-X'|, mu2 = E|Y-Y'| and the population squared distance
/// covariance (0 under independence).
struct OracleSpec {
    enum class Generator { bernoulli_half_pair, std_normal_pair, trig_pair, custom };

    Generator generator{Generator::custom};
    int trig_k{1};
    int trig_m{2};
    std::optional<double> mu1;
    std::optional<double> mu2;
    std::optional<double> v2_true;
    /// Fills two equal-length scalar samples; used when generator == custom.
    std::function<void(SplitMix64&, Eigen::VectorXd&, Eigen::VectorXd&)> custom;

    static OracleSpec bernoulli_half();
    static OracleSpec std_normal();
    static OracleSpec trig(int k, int m);
};

struct SimReport {
    std::string label;
    double estimate{0.0};
    double std_error{0.0};
    Eigen::Index replicates{0};
    std::optional<double> target;
    std::optional<double> z_score; // (estimate - target) / std_error
};

/// Monte Carlo mean of V_n^2 under `spec`, reported against the closed-form
/// expectation (n-1)/n^2 * [(n-2) V^2 + mu1 mu2]. Requires known population
/// parameters and reps >= 1000.
SimReport mc_vn2_expectation(const OracleSpec& spec, Eigen::Index n, Eigen::Index reps,
                             std::uint64_t seed, int threads = 0);

/// Distance-correlation sweep over X = sin(k U), Y = sin(m U), U uniform on
/// (0, 2pi). For each m two reports: the mean distance correlation estimate
/// (label "dcor(m=..)") and the mean corrected correlation ("cn(m=..)").
/// mirror_u replaces U by 2pi - U on the same underlying draws, for a
/// distributional-symmetry check.
std::vector<SimReport> trig_dcor_sweep(int k, const std::vector<int>& m_values, Eigen::Index n,
                                       Eigen::Index reps, std::uint64_t seed, int threads = 0,
                                       bool mirror_u = false);

/// Kolmogorov-Smirnov distance between the sampled distribution of
/// S_n = sin U + sin 2U + ... + sin nU and Cauchy(0, 1/2).
double sn_cauchy_check(Eigen::Index n, Eigen::Index reps, std::uint64_t seed, int threads = 0);

/// Kolmogorov-Smirnov distance between sampled n*C_n values (X, Y independent
/// standard normal in dimensions p and q) and Normal(0, variance 2).
double highdim_null_distribution(Eigen::Index p, Eigen::Index q, Eigen::Index n,
                                 Eigen::Index reps, std::uint64_t seed, int threads = 0);

/// sup_x |F_emp(x) - cdf(x)| over a sample (one-sample KS statistic).
double ks_distance(std::vector<double> values, const std::function<double(double)>& cdf);

/// CDF of Cauchy with location 0, scale 1/2.
double cauchy_half_cdf(double x);

/// CDF of Normal(0, variance 2).
double normal_var2_cdf(double x);

} // namespace distcov

#endif
