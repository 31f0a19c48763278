#include "eda/normalization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "eda/error.hpp"

namespace eda {

namespace {

void require_finite(double x, const char* where) {
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::NonFiniteValue,
                    std::string(where) + ": non-finite value");
    }
}

// Acklam's rational approximation, lower half only (p <= 0.5). Relative
// error about 1e-9 before refinement.
double acklam_lower(double p) {
    static constexpr std::array<double, 6> a = {
        -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
        1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b = {
        -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
        6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr std::array<double, 6> c = {
        -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
        -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d = {
        7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
        3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// One Halley step against the erfc-based CDF brings the lower-half
// approximation to full double precision.
double invnorm_lower(double p) {
    double x = acklam_lower(p);
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

} // namespace

SortedFeature::SortedFeature(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw Error(ErrorKind::EmptyClass, "a feature needs at least two samples");
    }
    for (double v : values_) require_finite(v, "fit_normalizer");
    std::sort(values_.begin(), values_.end());
}

SortedFeature::SortedFeature(std::vector<double> values, presorted_tag)
    : values_(std::move(values)) {}

SortedFeature SortedFeature::from_sorted(std::vector<double> values) {
    if (values.size() < 2) {
        throw Error(ErrorKind::EmptyClass, "a feature needs at least two samples");
    }
    for (double v : values) require_finite(v, "SortedFeature");
    if (!std::is_sorted(values.begin(), values.end())) {
        throw Error(ErrorKind::ParseError, "feature values are not sorted ascending");
    }
    return SortedFeature(std::move(values), presorted_tag{});
}

std::size_t SortedFeature::rank(double x) const noexcept {
    const auto it = std::lower_bound(values_.begin(), values_.end(), x);
    const auto idx = static_cast<std::size_t>(it - values_.begin());
    return std::min(idx + 1, values_.size());
}

MarginalNormalizer::MarginalNormalizer(std::vector<SortedFeature> features)
    : features_(std::move(features)) {
    if (features_.empty()) {
        throw Error(ErrorKind::DimensionMismatch, "normalizer needs at least one feature");
    }
    const std::size_t n = features_.front().size();
    for (const auto& f : features_) {
        if (f.size() != n) {
            throw Error(ErrorKind::DimensionMismatch,
                        "all features of a normalizer must share the sample count");
        }
    }
}

MarginalNormalizer fit_normalizer(const Matrix& data) {
    if (data.rows() < 2) {
        throw Error(ErrorKind::EmptyClass,
                    "class has " + std::to_string(data.rows()) + " rows, need at least 2");
    }
    if (data.cols() < 1) {
        throw Error(ErrorKind::DimensionMismatch, "data has no feature columns");
    }
    std::vector<SortedFeature> features;
    features.reserve(static_cast<std::size_t>(data.cols()));
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
        std::vector<double> column(data.col(j).begin(), data.col(j).end());
        features.emplace_back(std::move(column));
    }
    return MarginalNormalizer(std::move(features));
}

double uniformize(const SortedFeature& feature, double x) {
    require_finite(x, "uniformize");
    const auto n = static_cast<double>(feature.size());
    return (static_cast<double>(feature.rank(x)) - 0.5) / n;
}

double invnorm(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorKind::DomainError,
                    "invnorm: probability must lie strictly inside (0, 1)");
    }
    if (p == 0.5) return 0.0;
    // 1 - p is exact for p in [0.5, 1), so the upper half mirrors the lower.
    if (p > 0.5) return -invnorm_lower(1.0 - p);
    return invnorm_lower(p);
}

double normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_log_density(double z) noexcept {
    constexpr double log_sqrt_2pi = 0.91893853320467274178;
    return -0.5 * z * z - log_sqrt_2pi;
}

Vector normalize_point(const MarginalNormalizer& normalizer, const Vector& x) {
    if (static_cast<std::size_t>(x.size()) != normalizer.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "query has dimension " + std::to_string(x.size()) + ", model expects " +
                        std::to_string(normalizer.dim()));
    }
    Vector z(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        z[j] = invnorm(uniformize(normalizer.feature(static_cast<std::size_t>(j)), x[j]));
    }
    return z;
}

Matrix normalize_rows(const MarginalNormalizer& normalizer, const Matrix& data) {
    Matrix out(data.rows(), data.cols());
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        out.row(i) = normalize_point(normalizer, data.row(i).transpose()).transpose();
    }
    return out;
}

} // namespace eda
