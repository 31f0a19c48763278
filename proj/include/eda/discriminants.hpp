#ifndef EDA_DISCRIMINANTS_HPP
#define EDA_DISCRIMINANTS_HPP

#include <cstddef>
#include <functional>
#include <span>

#include "eda/gaussian.hpp"
#include "eda/jacobian.hpp"
#include "eda/normalization.hpp"
#include "eda/types.hpp"

namespace eda {

// All scores are oriented as log L_case(x) - log L_control(x). A score > 0
// predicts case; a score of exactly 0 predicts control.

inline bool predicts_case(double score) noexcept { return score > 0.0; }

/// Normalizer and Gaussian model of the normalized data for one class.
struct ClassModel {
    MarginalNormalizer normalizer;
    CovModel cov;

    std::size_t dim() const noexcept { return normalizer.dim(); }
    std::size_t sample_count() const noexcept { return normalizer.sample_count(); }
};

/// Fits the class's normalizer on `data`, normalizes `data` with it and
/// fits the covariance of the scores.
ClassModel fit_class(const Matrix& data);

struct EdaModel {
    ClassModel case_model;
    ClassModel control_model;
    JacobianConfig jacobian;
    /// log(prior_case / prior_control), added to every EDA score.
    double prior_offset = 0.0;

    std::size_t dim() const noexcept { return case_model.dim(); }
};

EdaModel fit_eda(const Matrix& case_data, const Matrix& control_data,
                 const JacobianConfig& cfg);

/// Log of the full empirical likelihood ratio: each class's normalized
/// Gaussian density mapped back to x through its estimated Jacobian.
double eda_log_ratio(const EdaModel& model, const Vector& x);

/// log G_case(z) - log G_control(z'), with z and z' the two rank-normalized
/// images of x. Depends on x only through its ranks within each class.
double rank_only_log_ratio(const EdaModel& model, const Vector& x);

/// Per-coordinate log of the ratio of the two normalizing maps' derivatives,
/// log[(rho_case / g(z_j)) / (rho_control / g(z'_j))], with rho the window
/// density estimates. Summed, these turn rank_only_log_ratio into
/// eda_log_ratio.
Vector log_jacobian_factors(const EdaModel& model, const Vector& x);

/// eda_log_ratio with the estimated marginal density ratio of every
/// coordinate replaced by theoretical_jacobian(pairs[j], x_j).
double eda_log_ratio_theoretical(const EdaModel& model,
                                 std::span<const MarginalDensityPair> pairs, const Vector& x);

/// Gaussian QDA on raw features.
struct QdaModel {
    Vector case_mean;
    CovModel case_cov;
    Vector control_mean;
    CovModel control_cov;
};

QdaModel fit_qda(const Matrix& case_data, const Matrix& control_data);
double qda_log_ratio(const QdaModel& model, const Vector& x);

/// True class log-densities, available only for simulated data.
struct OracleDensities {
    std::function<double(const Vector&)> case_logpdf;
    std::function<double(const Vector&)> control_logpdf;
};

/// case_logpdf(x) - control_logpdf(x); 0 when both are -inf.
double bayes_oracle_score(const OracleDensities& densities, const Vector& x);

} // namespace eda

#endif
