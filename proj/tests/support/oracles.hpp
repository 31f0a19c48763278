#ifndef EDA_TESTS_ORACLES_HPP
#define EDA_TESTS_ORACLES_HPP

// Reference computations used only by tests. Nothing here calls into the
// library code paths being checked.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/erf.hpp>

namespace eda::testing {

/// Standard normal quantile by bisection on Boost's long double erfc.
inline double bisection_invnorm(double p) {
    const long double sqrt2 = std::sqrt(2.0L);
    const bool upper = p > 0.5;
    // Solve in whichever tail keeps the target probability small.
    const long double target = upper ? 1.0L - static_cast<long double>(p) : p;
    long double lo = -40.0L, hi = 0.0L;
    for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (lo + hi);
        const long double cdf = 0.5L * boost::math::erfc(-mid / sqrt2);
        (cdf < target ? lo : hi) = mid;
    }
    const auto z = static_cast<double>(0.5L * (lo + hi));
    return upper ? -z : z;
}

/// Sample covariance computed with an explicit double loop.
inline Eigen::MatrixXd loop_covariance(const Eigen::MatrixXd& x) {
    const auto n = x.rows();
    const auto d = x.cols();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (Eigen::Index i = 0; i < n; ++i) mean += x.row(i).transpose();
    mean /= static_cast<double>(n);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index a = 0; a < d; ++a) {
            for (Eigen::Index b = 0; b < d; ++b) {
                cov(a, b) += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
            }
        }
    }
    return cov / static_cast<double>(n - 1);
}

/// Random symmetric positive definite matrix A A' + d I.
inline Eigen::MatrixXd random_spd(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = normal(rng);
    }
    return a * a.transpose() + static_cast<double>(d) * Eigen::MatrixXd::Identity(n, n);
}

/// n x d matrix of correlated Gaussian rows with random per-column scale.
inline Eigen::MatrixXd random_dataset(Eigen::Index n, Eigen::Index d, std::mt19937_64& rng,
                                      double shift = 0.0) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> scale(0.5, 3.0);
    Eigen::MatrixXd x(n, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const double s = scale(rng);
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = shift + s * normal(rng);
    }
    // mix neighbouring columns for some correlation
    for (Eigen::Index j = 1; j < d; ++j) x.col(j) += 0.5 * x.col(j - 1);
    return x;
}

} // namespace eda::testing

#endif
