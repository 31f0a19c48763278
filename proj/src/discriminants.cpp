#include "eda/discriminants.hpp"

#include <cmath>
#include <string>

#include "eda/error.hpp"

namespace eda {

namespace {

void require_dim(const EdaModel& model, const Vector& x) {
    if (static_cast<std::size_t>(x.size()) != model.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "query has dimension " + std::to_string(x.size()) + ", model expects " +
                        std::to_string(model.dim()));
    }
}

// log G(z) - sum_j log g(z_j): the normalized Gaussian density relative to
// the product of its standard normal marginals.
double copula_log_density(const CovModel& cov, const Vector& z) {
    double marginal = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) marginal += normal_log_density(z[j]);
    return log_gauss_density(cov, z) - marginal;
}

} // namespace

ClassModel fit_class(const Matrix& data) {
    MarginalNormalizer normalizer = fit_normalizer(data);
    CovModel cov = fit_covariance(normalize_rows(normalizer, data));
    return ClassModel{std::move(normalizer), std::move(cov)};
}

EdaModel fit_eda(const Matrix& case_data, const Matrix& control_data,
                 const JacobianConfig& cfg) {
    cfg.validate();
    if (case_data.cols() != control_data.cols()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "case data has " + std::to_string(case_data.cols()) +
                        " features, control data has " + std::to_string(control_data.cols()));
    }
    return EdaModel{fit_class(case_data), fit_class(control_data), cfg, 0.0};
}

double eda_log_ratio(const EdaModel& model, const Vector& x) {
    require_dim(model, x);
    const Vector z = normalize_point(model.case_model.normalizer, x);
    const Vector z_control = normalize_point(model.control_model.normalizer, x);

    // Log of the ratio, not a difference of logs: a common rescaling of a
    // feature then cancels exactly.
    double marginal = 0.0;
    for (std::size_t j = 0; j < model.dim(); ++j) {
        marginal -= std::log(jacobian_ratio(model.case_model.normalizer.feature(j),
                                            model.control_model.normalizer.feature(j),
                                            x[static_cast<Eigen::Index>(j)], model.jacobian));
    }
    return marginal + copula_log_density(model.case_model.cov, z) -
           copula_log_density(model.control_model.cov, z_control) + model.prior_offset;
}

double rank_only_log_ratio(const EdaModel& model, const Vector& x) {
    require_dim(model, x);
    const Vector z = normalize_point(model.case_model.normalizer, x);
    const Vector z_control = normalize_point(model.control_model.normalizer, x);
    return log_gauss_density(model.case_model.cov, z) -
           log_gauss_density(model.control_model.cov, z_control) + model.prior_offset;
}

Vector log_jacobian_factors(const EdaModel& model, const Vector& x) {
    require_dim(model, x);
    const Vector z = normalize_point(model.case_model.normalizer, x);
    const Vector z_control = normalize_point(model.control_model.normalizer, x);
    Vector factors(x.size());
    for (std::size_t j = 0; j < model.dim(); ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const double ratio =
            jacobian_ratio(model.case_model.normalizer.feature(j),
                           model.control_model.normalizer.feature(j), x[jj], model.jacobian);
        factors[jj] = -std::log(ratio) + normal_log_density(z_control[jj]) -
                      normal_log_density(z[jj]);
    }
    return factors;
}

double eda_log_ratio_theoretical(const EdaModel& model,
                                 std::span<const MarginalDensityPair> pairs, const Vector& x) {
    require_dim(model, x);
    if (pairs.size() != model.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "expected one density pair per feature (" + std::to_string(model.dim()) +
                        "), got " + std::to_string(pairs.size()));
    }
    const Vector z = normalize_point(model.case_model.normalizer, x);
    const Vector z_control = normalize_point(model.control_model.normalizer, x);
    double marginal = 0.0;
    for (std::size_t j = 0; j < model.dim(); ++j) {
        marginal -= std::log(theoretical_jacobian(pairs[j], x[static_cast<Eigen::Index>(j)]));
    }
    return marginal + copula_log_density(model.case_model.cov, z) -
           copula_log_density(model.control_model.cov, z_control) + model.prior_offset;
}

QdaModel fit_qda(const Matrix& case_data, const Matrix& control_data) {
    if (case_data.cols() != control_data.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "QDA classes differ in feature count");
    }
    if (!case_data.allFinite() || !control_data.allFinite()) {
        throw Error(ErrorKind::NonFiniteValue, "fit_qda: non-finite training value");
    }
    return QdaModel{
        case_data.colwise().mean().transpose(),
        CovModel::regularized(sample_covariance(case_data)),
        control_data.colwise().mean().transpose(),
        CovModel::regularized(sample_covariance(control_data)),
    };
}

double qda_log_ratio(const QdaModel& model, const Vector& x) {
    if (x.size() != model.case_mean.size()) {
        throw Error(ErrorKind::DimensionMismatch, "query dimension does not match QDA model");
    }
    return log_gauss_density(model.case_cov, x - model.case_mean) -
           log_gauss_density(model.control_cov, x - model.control_mean);
}

double bayes_oracle_score(const OracleDensities& densities, const Vector& x) {
    const double a = densities.case_logpdf(x);
    const double b = densities.control_logpdf(x);
    if (std::isinf(a) && std::isinf(b) && a < 0.0 && b < 0.0) return 0.0;
    return a - b;
}

} // namespace eda
