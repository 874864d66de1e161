#ifndef DISTCOV_INFERENCE_HPP
#define DISTCOV_INFERENCE_HPP

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>

#include "distcov/core/centering.hpp"
#include "distcov/core/dcov.hpp"

namespace distcov {

enum class Statistic { nV2_over_T2, nCn, Cn, Vn2 };
enum class TestMethod { permutation, normal_highdim };
enum class Tail { upper, two_sided };

const char* to_string(Statistic s) noexcept;
const char* to_string(TestMethod m) noexcept;

struct TestResult {
    Statistic statistic_name{Statistic::nV2_over_T2};
    double statistic_value{0.0};
    double p_value{1.0}; // in (0, 1] for the permutation method
    TestMethod method{TestMethod::permutation};
    Eigen::Index replicates{0}; // 0 for normal_highdim
    std::uint64_t seed{0};
};

struct PermutationPlan {
    Eigen::Index replicates{999};
    std::uint64_t seed{0};
    Statistic statistic{Statistic::nV2_over_T2};
    int threads{0}; // 0 = process default
};

/// The replicate kernel: the chosen statistic evaluated with the rows and
/// columns of the centered Y-matrix jointly reordered by `perm`. Distances
/// are never recomputed; reordering the centered matrix is equivalent to
/// re-centering reordered raw data because double centering commutes with a
/// joint row/column permutation. `denominators` carries the permutation-
/// invariant parts (see permutation_denominators).
struct PermutationDenominators {
    double t2{0.0};
    double un_xx{0.0};
    double un_yy{0.0};
    Eigen::Index n{0};
};

PermutationDenominators permutation_denominators(const CenteredDistancesXd& ax,
                                                 const CenteredDistancesXd& by,
                                                 Statistic statistic);

double permuted_statistic(const CenteredDistancesXd& ax, const CenteredDistancesXd& by,
                          std::span<const int> perm, Statistic statistic,
                          const PermutationDenominators& denominators);

/// Identity-pairing value of the chosen statistic (the observed statistic).
double observed_statistic(const CenteredDistancesXd& ax, const CenteredDistancesXd& by,
                          Statistic statistic, const PermutationDenominators& denominators);

/// Permutation test of independence. Each replicate draws a uniform random
/// permutation from a stream derived from (seed, replicate index) and
/// re-pairs the centered Y-matrix by index only. p = (1 + #{replicate >=
/// observed}) / (B + 1); results are identical for any thread count.
TestResult permutation_test(const Eigen::MatrixXd& dx, const Eigen::MatrixXd& dy,
                            const PermutationPlan& plan);

/// Same test starting from already-centered inputs (used when the caller
/// reuses centered matrices across calls).
TestResult permutation_test(const CenteredDistancesXd& ax, const CenteredDistancesXd& by,
                            const PermutationPlan& plan);

/// High-dimension decision rule: compare n*C_n against a Normal(0, variance
/// 2) reference. Tail probabilities are evaluated with the complementary
/// error function.
TestResult highdim_test(double cn, Eigen::Index n, Tail tail = Tail::upper);

/// Upper-tail probability of Normal(0, variance 2).
double normal2_upper_tail(double x);

} // namespace distcov

#endif
