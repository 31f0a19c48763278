#ifndef EDA_GAUSSIAN_HPP
#define EDA_GAUSSIAN_HPP

#include <cstddef>

#include "eda/types.hpp"

namespace eda {

/// Covariance matrix together with its lower Cholesky factor. Quadratic
/// forms and determinants are evaluated through the factor only.
class CovModel {
public:
    /// Factors `sigma` exactly as given. Throws SingularCovariance when the
    /// matrix is not numerically positive definite.
    static CovModel from_sigma(Matrix sigma);

    /// Factors `sigma`, adding an escalating ridge eps * (trace / d) * I with
    /// eps in {1e-10, 1e-8, 1e-6} if the plain factorization fails.
    static CovModel regularized(Matrix sigma);

    const Matrix& sigma() const noexcept { return sigma_; }
    const Matrix& chol() const noexcept { return chol_; }
    double log_det() const noexcept { return log_det_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(sigma_.rows()); }
    /// Absolute diagonal term that was added to the sample covariance, 0 if none.
    double ridge() const noexcept { return ridge_; }

    /// Solves chol * w = z.
    Vector whiten(const Vector& z) const;

    /// z' * sigma^-1 * z.
    double quadratic_form(const Vector& z) const;

private:
    CovModel() = default;
    static CovModel assemble(Matrix sigma, Matrix lower, double ridge);

    Matrix sigma_;
    Matrix chol_;
    double log_det_ = 0.0;
    double ridge_ = 0.0;
};

/// Unbiased (n - 1) sample covariance of the rows of `data`.
Matrix sample_covariance(const Matrix& data);

/// Sample covariance of the rows of `z`, regularized if needed.
/// Throws TooFewSamples for fewer than two rows.
CovModel fit_covariance(const Matrix& z);

/// Zero-mean multivariate normal log-density with the model's covariance.
double log_gauss_density(const CovModel& model, const Vector& z);

} // namespace eda

#endif
