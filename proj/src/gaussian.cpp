#include "eda/gaussian.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "eda/error.hpp"

namespace eda {

namespace {

// Pivots whose square falls below this fraction of the largest variance are
// treated as a failed factorization (numerical rank deficiency).
constexpr double kPivotTolerance = 1e-13;

std::optional<Matrix> try_cholesky(const Matrix& sigma) {
    if (!sigma.allFinite()) return std::nullopt;
    Eigen::LLT<Matrix> llt(sigma);
    if (llt.info() != Eigen::Success) return std::nullopt;
    Matrix lower = llt.matrixL();
    const double scale = sigma.diagonal().maxCoeff();
    if (!(scale > 0.0)) return std::nullopt;
    for (Eigen::Index i = 0; i < lower.rows(); ++i) {
        const double pivot = lower(i, i);
        if (!(pivot > 0.0) || pivot * pivot <= kPivotTolerance * scale) return std::nullopt;
    }
    return lower;
}

} // namespace

CovModel CovModel::from_sigma(Matrix sigma) {
    if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch, "covariance must be square and non-empty");
    }
    auto lower = try_cholesky(sigma);
    if (!lower) {
        throw Error(ErrorKind::SingularCovariance, "covariance is not positive definite");
    }
    return assemble(std::move(sigma), std::move(*lower), 0.0);
}

CovModel CovModel::assemble(Matrix sigma, Matrix lower, double ridge) {
    CovModel model;
    model.sigma_ = std::move(sigma);
    model.chol_ = std::move(lower);
    model.log_det_ = 2.0 * model.chol_.diagonal().array().log().sum();
    model.ridge_ = ridge;
    return model;
}

CovModel CovModel::regularized(Matrix sigma) {
    if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch, "covariance must be square and non-empty");
    }
    if (auto lower = try_cholesky(sigma)) {
        return assemble(std::move(sigma), std::move(*lower), 0.0);
    }
    const double mean_variance = sigma.trace() / static_cast<double>(sigma.rows());
    if (std::isfinite(mean_variance) && mean_variance > 0.0) {
        for (double eps : std::array{1e-10, 1e-8, 1e-6}) {
            const double ridge = eps * mean_variance;
            Matrix candidate = sigma;
            candidate.diagonal().array() += ridge;
            if (auto lower = try_cholesky(candidate)) {
                return assemble(std::move(candidate), std::move(*lower), ridge);
            }
        }
    }
    throw Error(ErrorKind::SingularCovariance,
                "covariance is singular even after ridge regularization");
}

Vector CovModel::whiten(const Vector& z) const {
    if (static_cast<std::size_t>(z.size()) != dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "vector has dimension " + std::to_string(z.size()) + ", covariance is " +
                        std::to_string(dim()) + "x" + std::to_string(dim()));
    }
    return chol_.triangularView<Eigen::Lower>().solve(z);
}

double CovModel::quadratic_form(const Vector& z) const {
    return whiten(z).squaredNorm();
}

Matrix sample_covariance(const Matrix& data) {
    if (data.rows() < 2) {
        throw Error(ErrorKind::TooFewSamples,
                    "covariance needs at least 2 rows, got " + std::to_string(data.rows()));
    }
    const Eigen::RowVectorXd mean = data.colwise().mean();
    const Matrix centered = data.rowwise() - mean;
    Matrix cov = (centered.transpose() * centered) / static_cast<double>(data.rows() - 1);
    // Symmetrize exactly; the product above is symmetric only up to rounding.
    return 0.5 * (cov + cov.transpose());
}

CovModel fit_covariance(const Matrix& z) {
    if (!z.allFinite()) {
        throw Error(ErrorKind::NonFiniteValue, "fit_covariance: non-finite score");
    }
    return CovModel::regularized(sample_covariance(z));
}

double log_gauss_density(const CovModel& model, const Vector& z) {
    const auto d = static_cast<double>(model.dim());
    const double log_2pi = std::log(2.0 * std::numbers::pi);
    return -0.5 * d * log_2pi - 0.5 * model.log_det() - 0.5 * model.quadratic_form(z);
}

} // namespace eda
